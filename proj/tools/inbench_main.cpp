// Benchmark CLI. Talks to the core only through the C API in insertionbench.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "insertionbench.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int status_to_exit(inb_status s) {
    if (s == INB_OK) return kExitOk;
    if (s == INB_ERR_CONFIG || s == INB_ERR_INVALID_ARGUMENT) return kExitConfig;
    return kExitRuntime;
}

int report(inb_status s) {
    if (s != INB_OK) {
        std::fprintf(stderr, "error (%s): %s\n", inb_status_name(s), inb_last_error());
    }
    return status_to_exit(s);
}

struct ConfigHandle {
    inb_config* cfg = nullptr;
    ~ConfigHandle() { inb_config_free(cfg); }
};

inb_status load(const std::string& path, ConfigHandle& h) {
    return path.empty() ? inb_config_default(&h.cfg) : inb_config_load(path.c_str(), &h.cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"insertion benchmark: backward data collection, residual-policy training "
                 "and closed-loop evaluation on a contact simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand

    std::string config_path;
    uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    bool trials_set = false;
    int threads = 1;

    app.add_option("--config", config_path, "JSON config file (defaults used when omitted)");
    app.add_option("--seed", seed, "seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--trials", trials, "trial count override")->each([&](const std::string&) {
        trials_set = true;
    });
    app.add_option("--threads", threads, "worker threads for trial/grid parallelism");

    std::string out_path, data_path, params_path, loss_csv;

    auto* collect = app.add_subcommand("collect", "run backward data collection");
    collect->add_option("--out", out_path, "output dataset file")->required();

    auto* train = app.add_subcommand("train", "train the residual policy on a dataset");
    train->add_option("--data", data_path, "input dataset file")->required();
    train->add_option("--out", out_path, "output parameter file")->required();
    train->add_option("--loss-csv", loss_csv, "optional per-step loss CSV");

    auto* eval = app.add_subcommand("eval", "evaluate a trained policy");
    eval->add_option("--params", params_path, "parameter file")->required();
    eval->add_option("--out", out_path, "output CSV")->required();

    auto* curve = app.add_subcommand("curve", "success rate vs. training-set size");
    curve->add_option("--out", out_path, "output CSV")->required();

    auto* generalize =
        app.add_subcommand("generalize", "location/color/shape generalization matrix");
    generalize->add_option("--out", out_path, "output CSV")->required();

    auto* transfer = app.add_subcommand("transfer", "fine-tuning vs. from-scratch comparison");
    transfer->add_option("--out", out_path, "output CSV")->required();

    auto* assembly = app.add_subcommand("assembly", "multi-socket board: localize then insert");
    assembly->add_option("--out", out_path, "output CSV")->required();

    auto* locdemo = app.add_subcommand("localize-demo", "board localization accuracy demo");
    locdemo->add_option("--out", out_path, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    ConfigHandle cfg;
    const inb_status cs = load(config_path, cfg);
    if (cs != INB_OK) return report(cs);

    inb_run_options opt{};
    opt.has_seed = seed_set ? 1 : 0;
    opt.seed = seed;
    opt.has_trials = trials_set ? 1 : 0;
    opt.trials = trials;
    opt.threads = threads;

    if (collect->parsed())
        return report(inb_run_collect(cfg.cfg, &opt, out_path.c_str()));
    if (train->parsed())
        return report(inb_run_train(cfg.cfg, &opt, data_path.c_str(), out_path.c_str(),
                                    loss_csv.empty() ? nullptr : loss_csv.c_str()));
    if (eval->parsed())
        return report(inb_run_eval(cfg.cfg, &opt, params_path.c_str(), out_path.c_str()));
    if (curve->parsed()) return report(inb_run_curve(cfg.cfg, &opt, out_path.c_str()));
    if (generalize->parsed()) return report(inb_run_generalize(cfg.cfg, &opt, out_path.c_str()));
    if (transfer->parsed()) return report(inb_run_transfer(cfg.cfg, &opt, out_path.c_str()));
    if (assembly->parsed()) return report(inb_run_assembly(cfg.cfg, &opt, out_path.c_str()));
    if (locdemo->parsed()) return report(inb_run_localize_demo(cfg.cfg, &opt, out_path.c_str()));

    std::fprintf(stderr, "no subcommand selected\n");
    return kExitConfig;
}
