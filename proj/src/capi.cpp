#include "insertionbench.h"

#include <cstring>
#include <string>

#include "inbench/config.hpp"
#include "inbench/errors.hpp"
#include "inbench/experiments.hpp"

using namespace inbench;

struct inb_config {
    BenchConfig cfg;
};
struct inb_dataset {
    Dataset data;
};
struct inb_model {
    ModelParams params;
};

namespace {

thread_local std::string g_last_error;

inb_status fail(inb_status s, const std::string& message) {
    g_last_error = message;
    return s;
}

// Maps the core exception taxonomy onto status codes.
template <typename Fn>
inb_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return INB_OK;
    } catch (const ConfigError& e) {
        return fail(INB_ERR_CONFIG, e.what());
    } catch (const TruncatedFile& e) {
        return fail(INB_ERR_TRUNCATED, e.what());
    } catch (const FormatError& e) {
        return fail(INB_ERR_FORMAT, e.what());
    } catch (const IoError& e) {
        return fail(INB_ERR_IO, e.what());
    } catch (const GoalUnreachable& e) {
        return fail(INB_ERR_GOAL_UNREACHABLE, e.what());
    } catch (const LocalizationFailed& e) {
        return fail(INB_ERR_LOCALIZATION, e.what());
    } catch (const ShapeMismatch& e) {
        return fail(INB_ERR_SHAPE, e.what());
    } catch (const std::exception& e) {
        return fail(INB_ERR_RUNTIME, e.what());
    }
}

RunOptions to_options(const inb_run_options* opt) {
    RunOptions o;
    if (opt != nullptr) {
        if (opt->has_seed) o.seed = opt->seed;
        if (opt->has_trials) o.trials = opt->trials;
        o.threads = opt->threads > 1 ? opt->threads : 1;
    }
    return o;
}

} // namespace

extern "C" {

const char* inb_status_name(inb_status s) {
    switch (s) {
        case INB_OK: return "ok";
        case INB_ERR_INVALID_ARGUMENT: return "invalid argument";
        case INB_ERR_CONFIG: return "config error";
        case INB_ERR_FORMAT: return "format error";
        case INB_ERR_TRUNCATED: return "truncated file";
        case INB_ERR_IO: return "io error";
        case INB_ERR_GOAL_UNREACHABLE: return "goal unreachable";
        case INB_ERR_LOCALIZATION: return "localization failed";
        case INB_ERR_SHAPE: return "shape mismatch";
        case INB_ERR_RUNTIME: return "runtime error";
    }
    return "unknown";
}

const char* inb_last_error(void) { return g_last_error.c_str(); }

inb_status inb_config_load(const char* path, inb_config** out) {
    if (path == nullptr || out == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new inb_config{load_config(path)}; });
}

inb_status inb_config_parse(const char* json_text, inb_config** out) {
    if (json_text == nullptr || out == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new inb_config{parse_config(json_text)}; });
}

inb_status inb_config_default(inb_config** out) {
    if (out == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new inb_config{default_config()}; });
}

void inb_config_free(inb_config* cfg) { delete cfg; }

inb_status inb_config_snapshot(const inb_config* cfg, char** out_json) {
    if (cfg == nullptr || out_json == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string snap = config_snapshot_json(cfg->cfg);
        *out_json = new char[snap.size() + 1];
        std::memcpy(*out_json, snap.c_str(), snap.size() + 1);
    });
}

void inb_string_free(char* s) { delete[] s; }

inb_status inb_collect(const inb_config* cfg, uint64_t seed, inb_dataset** out) {
    if (cfg == nullptr || out == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        CollectConfig cc = cfg->cfg.collect;
        cc.rng_seed = seed;
        *out = new inb_dataset{collect_backward(cfg->cfg.board, 0, cc, cfg->cfg.sim,
                                                cfg->cfg.sensors, cfg->cfg.camera)};
    });
}

inb_status inb_dataset_read(const char* path, inb_dataset** out) {
    if (path == nullptr || out == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new inb_dataset{read_dataset(path)}; });
}

inb_status inb_dataset_write(const inb_dataset* d, const char* path) {
    if (d == nullptr || path == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { write_dataset(d->data, path); });
}

size_t inb_dataset_count(const inb_dataset* d) { return d == nullptr ? 0 : d->data.count(); }

inb_status inb_dataset_dims(const inb_dataset* d, int* h, int* w, int* c) {
    if (d == nullptr || h == nullptr || w == nullptr || c == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    *h = d->data.height;
    *w = d->data.width;
    *c = d->data.channels;
    return INB_OK;
}

void inb_dataset_free(inb_dataset* d) { delete d; }

inb_status inb_train(const inb_config* cfg, const inb_dataset* data, uint64_t seed,
                     inb_model** out) {
    if (cfg == nullptr || data == nullptr || out == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        TrainConfig tc = cfg->cfg.train;
        tc.rng_seed = seed;
        *out = new inb_model{train(data->data, cfg->cfg.augment, tc).params};
    });
}

inb_status inb_model_load(const char* path, inb_model** out) {
    if (path == nullptr || out == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new inb_model{load_params(path)}; });
}

inb_status inb_model_save(const inb_model* m, const char* path) {
    if (m == nullptr || path == nullptr) return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { save_params(m->params, path); });
}

inb_status inb_model_forward(const inb_model* m, const float* image, size_t image_len,
                             const double wrench[6], double out_action[5]) {
    if (m == nullptr || image == nullptr || wrench == nullptr || out_action == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto& dims = m->params.t.dims;
        const size_t expected =
            static_cast<size_t>(dims.in_h) * dims.in_w * dims.in_c;
        if (image_len != expected)
            throw ShapeMismatch("image length " + std::to_string(image_len) + ", expected " +
                                std::to_string(expected));
        ImageTensor img;
        img.height = dims.in_h;
        img.width = dims.in_w;
        img.channels = dims.in_c;
        img.data.assign(image, image + image_len);
        WrenchReading w;
        w.f = {wrench[0], wrench[1], wrench[2]};
        w.m = {wrench[3], wrench[4], wrench[5]};
        const CorrectiveAction a = forward(m->params, img, w);
        const auto arr = a.as_array();
        for (int i = 0; i < 5; ++i) out_action[i] = arr[i];
    });
}

void inb_model_free(inb_model* m) { delete m; }

inb_status inb_evaluate(const inb_config* cfg, const inb_model* m, int trials, uint64_t seed,
                        int threads, inb_eval_summary* out) {
    if (cfg == nullptr || m == nullptr || out == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const EvalSummary s =
            evaluate(cfg->cfg.board, 0, m->params, trials, cfg->cfg.collect.b0,
                     cfg->cfg.collect.c0, cfg->cfg.policy, cfg->cfg.sim, cfg->cfg.sensors,
                     cfg->cfg.camera, seed, threads > 1 ? threads : 1);
        out->success_rate = s.success_rate;
        out->mean_duration_s = s.mean_duration;
        out->trials = static_cast<int>(s.trials.size());
    });
}

inb_status inb_run_collect(const inb_config* cfg, const inb_run_options* opt,
                           const char* out_path) {
    if (cfg == nullptr || out_path == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_collect(cfg->cfg, to_options(opt), out_path); });
}

inb_status inb_run_train(const inb_config* cfg, const inb_run_options* opt,
                         const char* dataset_path, const char* out_params,
                         const char* loss_csv_or_null) {
    if (cfg == nullptr || dataset_path == nullptr || out_params == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        run_train(cfg->cfg, to_options(opt), dataset_path, out_params,
                  loss_csv_or_null != nullptr ? loss_csv_or_null : "");
    });
}

inb_status inb_run_eval(const inb_config* cfg, const inb_run_options* opt,
                        const char* params_path, const char* out_csv) {
    if (cfg == nullptr || params_path == nullptr || out_csv == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_eval(cfg->cfg, to_options(opt), params_path, out_csv); });
}

inb_status inb_run_curve(const inb_config* cfg, const inb_run_options* opt, const char* out_csv) {
    if (cfg == nullptr || out_csv == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_curve(cfg->cfg, to_options(opt), out_csv); });
}

inb_status inb_run_generalize(const inb_config* cfg, const inb_run_options* opt,
                              const char* out_csv) {
    if (cfg == nullptr || out_csv == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_generalize(cfg->cfg, to_options(opt), out_csv); });
}

inb_status inb_run_transfer(const inb_config* cfg, const inb_run_options* opt,
                            const char* out_csv) {
    if (cfg == nullptr || out_csv == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_transfer(cfg->cfg, to_options(opt), out_csv); });
}

inb_status inb_run_assembly(const inb_config* cfg, const inb_run_options* opt,
                            const char* out_csv) {
    if (cfg == nullptr || out_csv == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_assembly(cfg->cfg, to_options(opt), out_csv); });
}

inb_status inb_run_localize_demo(const inb_config* cfg, const inb_run_options* opt,
                                 const char* out_csv) {
    if (cfg == nullptr || out_csv == nullptr)
        return fail(INB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { run_localize_demo(cfg->cfg, to_options(opt), out_csv); });
}

} // extern "C"
