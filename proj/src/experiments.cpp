#include "inbench/experiments.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "inbench/errors.hpp"

namespace inbench {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw IoError("short write: " + path);
}

void write_snapshot(const BenchConfig& cfg, const std::string& out_path) {
    write_text(out_path + ".config.json", config_snapshot_json(cfg));
}

uint64_t pick_seed(const RunOptions& opt, uint64_t fallback) {
    return opt.seed.value_or(fallback);
}

struct Row {
    std::string experiment;
    std::string condition;
    std::string task_id;
    int n_samples;
    double success_rate;
    double mean_duration;
    uint64_t seed;
};

std::string rows_to_csv(const std::vector<Row>& rows) {
    std::string csv = "experiment,condition,task_id,n_samples,success_rate,mean_duration_s,seed\n";
    char buf[64];
    for (const Row& r : rows) {
        csv += r.experiment + "," + r.condition + "," + r.task_id + ",";
        std::snprintf(buf, sizeof(buf), "%d", r.n_samples);
        csv += std::string(buf) + "," + format_csv_double(r.success_rate) + "," +
               format_csv_double(r.mean_duration) + ",";
        std::snprintf(buf, sizeof(buf), "%" PRIu64, r.seed);
        csv += buf;
        csv += "\n";
    }
    return csv;
}

Dataset collect_for(const BenchConfig& cfg, const BoardLayout& board, size_t socket, int n_p,
                    uint64_t seed) {
    CollectConfig cc = cfg.collect;
    cc.n_p = n_p;
    cc.rng_seed = seed;
    return collect_backward(board, socket, cc, cfg.sim, cfg.sensors, cfg.camera);
}

EvalSummary eval_board(const BenchConfig& cfg, const BoardLayout& board, size_t socket,
                       const ModelParams& params, int trials, uint64_t seed, int threads) {
    return evaluate(board, socket, params, trials, cfg.collect.b0, cfg.collect.c0, cfg.policy,
                    cfg.sim, cfg.sensors, cfg.camera, seed, threads);
}

} // namespace

std::string format_csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void run_collect(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_path) {
    CollectConfig cc = cfg.collect;
    cc.rng_seed = pick_seed(opt, cc.rng_seed);
    Dataset d = collect_backward(cfg.board, 0, cc, cfg.sim, cfg.sensors, cfg.camera);
    write_dataset(d, out_path);
    BenchConfig snap = cfg;
    snap.collect = cc;
    write_snapshot(snap, out_path);
}

void run_train(const BenchConfig& cfg, const RunOptions& opt, const std::string& dataset_path,
               const std::string& out_params, const std::string& loss_csv_path) {
    const Dataset d = read_dataset(dataset_path);
    TrainConfig tc = cfg.train;
    tc.rng_seed = pick_seed(opt, tc.rng_seed);
    const TrainResult result = train(d, cfg.augment, tc);
    save_params(result.params, out_params);
    if (!loss_csv_path.empty()) {
        std::string csv = "step,loss\n";
        for (size_t i = 0; i < result.loss_curve.size(); ++i) {
            csv += std::to_string(i) + "," + format_csv_double(result.loss_curve[i]) + "\n";
        }
        write_text(loss_csv_path, csv);
    }
    BenchConfig snap = cfg;
    snap.train = tc;
    write_snapshot(snap, out_params);
}

void run_eval(const BenchConfig& cfg, const RunOptions& opt, const std::string& params_path,
              const std::string& out_csv) {
    const ModelParams params = load_params(params_path);
    const uint64_t seed = pick_seed(opt, cfg.experiment.seed);
    const int trials = opt.trials.value_or(cfg.experiment.trials);
    const EvalSummary s = eval_board(cfg, cfg.board, 0, params, trials, seed, opt.threads);

    std::string csv = "row,task_id,trial,success,duration_s,n_commands,residual\n";
    csv += "summary," + cfg.board.sockets[0].task.task_id + "," + std::to_string(trials) + "," +
           format_csv_double(s.success_rate) + "," + format_csv_double(s.mean_duration) + ",,\n";
    for (size_t i = 0; i < s.trials.size(); ++i) {
        const TrialResult& t = s.trials[i];
        csv += "trial," + cfg.board.sockets[0].task.task_id + "," + std::to_string(i) + "," +
               (t.success ? "1" : "0") + "," + format_csv_double(t.duration) + "," +
               std::to_string(t.n_commands) + "," + (t.residual_activated ? "1" : "0") + "\n";
    }
    write_text(out_csv, csv);
    write_snapshot(cfg, out_csv);
}

void run_curve(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv) {
    const uint64_t seed = pick_seed(opt, cfg.experiment.seed);
    const int trials = opt.trials.value_or(cfg.experiment.curve_trials);
    const Dataset full =
        collect_for(cfg, cfg.board, 0, cfg.experiment.curve_collect_n, cfg.collect.rng_seed);

    std::string csv = "n_samples,success_rate,mean_duration_s\n";
    for (int n : cfg.experiment.curve_sizes) {
        if (static_cast<size_t>(n) > full.count())
            throw std::runtime_error("curve: dataset has only " + std::to_string(full.count()) +
                                     " records, size " + std::to_string(n) + " unavailable");
        TrainConfig tc = cfg.train;
        tc.rng_seed = mix_seed(cfg.train.rng_seed, static_cast<uint64_t>(n));
        const TrainResult tr = train(full.prefix(static_cast<size_t>(n)), cfg.augment, tc);
        const EvalSummary s = eval_board(cfg, cfg.board, 0, tr.params, trials,
                                         mix_seed(seed, static_cast<uint64_t>(n)), opt.threads);
        csv += std::to_string(n) + "," + format_csv_double(s.success_rate) + "," +
               format_csv_double(s.mean_duration) + "\n";
    }
    write_text(out_csv, csv);
    write_snapshot(cfg, out_csv);
}

TaskSpec recolored_task(const TaskSpec& task, const Rgb& peg_color) {
    TaskSpec t = task;
    t.peg_color = peg_color;
    t.task_id = task.task_id + "_recolored";
    return t;
}

TaskSpec perturbed_shape_task(const TaskSpec& task, double scale) {
    TaskSpec t = task;
    Polygon peg;
    for (const Vec2& v : task.peg.vertices) peg.push_back(v * scale);
    t.peg = CrossSection::from_polygon(peg);
    const double margin = offset_margin(t, {0.0, 0.0}, 0.0);
    if (margin <= 0.0) throw ConfigError("perturbed shape no longer fits its hole");
    t.clearance = margin;
    t.task_id = task.task_id + "_shape";
    return t;
}

void run_generalize(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv) {
    const uint64_t seed = pick_seed(opt, cfg.experiment.seed);
    const int trials = opt.trials.value_or(cfg.experiment.curve_trials);

    const Dataset data = collect_for(cfg, cfg.board, 0, cfg.collect.n_p, cfg.collect.rng_seed);
    const TrainResult aug_trained = train(data, cfg.augment, cfg.train);
    AugmentConfig no_aug = cfg.augment;
    no_aug.visual = false;
    no_aug.force = false;
    TrainConfig plain_tc = cfg.train;
    plain_tc.rng_seed = mix_seed(cfg.train.rng_seed, 0xA0);
    const TrainResult plain_trained = train(data, no_aug, plain_tc);

    std::vector<Row> rows;
    const std::string& tid = cfg.task.task_id;
    const int n = static_cast<int>(data.count());

    {
        const EvalSummary s = eval_board(cfg, cfg.board, 0, aug_trained.params, trials,
                                         mix_seed(seed, 0), opt.threads);
        rows.push_back({"generalize", "baseline", tid, n, s.success_rate, s.mean_duration, seed});
    }
    for (size_t i = 0; i < cfg.experiment.locations.size(); ++i) {
        BoardLayout moved = cfg.board;
        moved.board_pose = cfg.experiment.locations[i];
        const EvalSummary s = eval_board(cfg, moved, 0, aug_trained.params, trials,
                                         mix_seed(seed, 1 + i), opt.threads);
        rows.push_back({"generalize", "location_" + std::to_string(i), tid, n, s.success_rate,
                        s.mean_duration, seed});
    }
    {
        BoardLayout recolored = cfg.board;
        recolored.sockets[0].task = recolored_task(cfg.task, cfg.experiment.recolor);
        const EvalSummary with_aug = eval_board(cfg, recolored, 0, aug_trained.params, trials,
                                                mix_seed(seed, 100), opt.threads);
        const EvalSummary without = eval_board(cfg, recolored, 0, plain_trained.params, trials,
                                               mix_seed(seed, 100), opt.threads);
        rows.push_back({"generalize", "color_augmented", tid, n, with_aug.success_rate,
                        with_aug.mean_duration, seed});
        rows.push_back({"generalize", "color_plain", tid, n, without.success_rate,
                        without.mean_duration, seed});
    }
    {
        BoardLayout shape = cfg.board;
        shape.sockets[0].task = perturbed_shape_task(cfg.task, cfg.experiment.shape_scale);
        const EvalSummary s = eval_board(cfg, shape, 0, aug_trained.params, trials,
                                         mix_seed(seed, 200), opt.threads);
        rows.push_back({"generalize", "shape", tid, n, s.success_rate, s.mean_duration, seed});
    }

    write_text(out_csv, rows_to_csv(rows));
    write_snapshot(cfg, out_csv);
}

void run_transfer(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv) {
    const uint64_t seed = pick_seed(opt, cfg.experiment.seed);
    const int trials = opt.trials.value_or(cfg.experiment.curve_trials);

    const Dataset data_a = collect_for(cfg, cfg.board, 0, cfg.collect.n_p, cfg.collect.rng_seed);
    const TrainResult base = train(data_a, cfg.augment, cfg.train);

    const TaskSpec task_b = builtin_task(cfg.experiment.transfer_task_b);
    const BoardLayout board_b = BoardLayout::single(task_b);
    const Dataset data_b = collect_for(cfg, board_b, 0, cfg.experiment.transfer_collect_n,
                                       mix_seed(cfg.collect.rng_seed, 0xB));

    std::vector<Row> rows;
    for (int k : cfg.experiment.transfer_k) {
        ModelParams tuned = base.params;
        if (k > 0) {
            if (static_cast<size_t>(k) > data_b.count())
                throw std::runtime_error("transfer: not enough task-B samples");
            TrainConfig ft = cfg.train;
            ft.steps = cfg.experiment.finetune_steps;
            ft.rng_seed = mix_seed(cfg.train.rng_seed, 0xF0 + static_cast<uint64_t>(k));
            tuned = train_from(base.params, data_b.prefix(static_cast<size_t>(k)), cfg.augment, ft)
                        .params;
        }
        const EvalSummary s = eval_board(cfg, board_b, 0, tuned, trials,
                                         mix_seed(seed, 0x10 + static_cast<uint64_t>(k)),
                                         opt.threads);
        rows.push_back({"transfer", "finetune_k" + std::to_string(k), task_b.task_id, k,
                        s.success_rate, s.mean_duration, seed});
    }
    for (int n : cfg.experiment.scratch_sizes) {
        if (static_cast<size_t>(n) > data_b.count())
            throw std::runtime_error("transfer: not enough task-B samples");
        TrainConfig tc = cfg.train;
        tc.rng_seed = mix_seed(cfg.train.rng_seed, 0x50 + static_cast<uint64_t>(n));
        const TrainResult tr = train(data_b.prefix(static_cast<size_t>(n)), cfg.augment, tc);
        const EvalSummary s = eval_board(cfg, board_b, 0, tr.params, trials,
                                         mix_seed(seed, 0x60 + static_cast<uint64_t>(n)),
                                         opt.threads);
        rows.push_back({"transfer", "scratch_n" + std::to_string(n), task_b.task_id, n,
                        s.success_rate, s.mean_duration, seed});
    }

    write_text(out_csv, rows_to_csv(rows));
    write_snapshot(cfg, out_csv);
}

BoardLayout assembly_board(const BenchConfig& cfg) {
    if (cfg.board_explicit && cfg.board.sockets.size() > 1) return cfg.board;
    BoardLayout board;
    board.board_pose = cfg.experiment.assembly_board_pose;
    const size_t n = cfg.experiment.assembly_tasks.size();
    for (size_t i = 0; i < n; ++i) {
        Socket s;
        s.task = builtin_task(cfg.experiment.assembly_tasks[i]);
        const double x = (static_cast<double>(i) - 0.5 * (static_cast<double>(n) - 1.0)) *
                         cfg.experiment.assembly_spacing;
        s.offset = Pose6{x, 0.0, 0.0, 0.0, 0.0, 0.0};
        board.sockets.push_back(std::move(s));
        board.occupied.push_back(false);
    }
    board.validate();
    return board;
}

void run_assembly(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv) {
    const uint64_t seed = pick_seed(opt, cfg.experiment.seed);
    BoardLayout nominal = assembly_board(cfg);

    // one shared policy trained on all sockets' data
    Dataset merged;
    for (size_t i = 0; i < nominal.sockets.size(); ++i) {
        merged.append(collect_for(cfg, nominal, i, cfg.collect.n_p,
                                  mix_seed(cfg.collect.rng_seed, i)));
    }
    std::string csv = "row,task_id,success,duration_s,iterations,error_mm,error_deg\n";
    if (nominal.sockets.empty()) {
        write_text(out_csv, csv);
        write_snapshot(cfg, out_csv);
        return;
    }
    const TrainResult multi = train(merged, cfg.augment, cfg.train);

    // register on the nominal board, then place the real board with an offset
    Pose6 reg_eef = nominal.board_pose;
    reg_eef.z += 0.15;
    const ReferenceRecord ref = register_reference(nominal, cfg.overhead, reg_eef);

    BoardLayout placed = nominal;
    placed.board_pose = compose(nominal.board_pose, cfg.experiment.assembly_offset);

    const LocalizeResult loc =
        localize(ref, placed, cfg.overhead, reg_eef, cfg.localizer, opt.threads);
    csv += "localize,,,," + std::to_string(loc.iterations) + ",,\n";

    double total_time = 0.0;
    for (size_t i = 0; i < placed.sockets.size(); ++i) {
        const Pose6 est_hole = loc.hole_poses[i].second;
        const Pose6 target = compose(est_hole, placed.sockets[i].task.goal_pose);
        Rng rng(mix_seed(seed, 0x5000 + i));
        const TrialResult t = run_trial(placed, i, target, multi.params, cfg.policy, cfg.sim,
                                        cfg.sensors, cfg.camera, rng);
        total_time += t.duration;
        if (t.success) placed.occupied[i] = true;
        csv += "insert," + placed.sockets[i].task.task_id + "," + (t.success ? "1" : "0") + "," +
               format_csv_double(t.duration) + ",,,\n";
    }
    csv += "total,,," + format_csv_double(total_time) + ",,,\n";
    write_text(out_csv, csv);
    write_snapshot(cfg, out_csv);
}

void run_localize_demo(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv) {
    const uint64_t seed = pick_seed(opt, cfg.experiment.seed);
    const int n_offsets = opt.trials.value_or(5);
    BoardLayout nominal = assembly_board(cfg);
    Pose6 reg_eef = nominal.board_pose;
    reg_eef.z += 0.15;
    const ReferenceRecord ref = register_reference(nominal, cfg.overhead, reg_eef);

    std::string csv = "offset_index,dx_mm,dy_mm,dyaw_deg,iterations,correlation,"
                      "error_x_mm,error_y_mm,error_yaw_deg\n";
    for (int i = 0; i < n_offsets; ++i) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(i)));
        const double dx = rng.uniform(-0.8, 0.8) * cfg.localizer.range_xy;
        const double dy = rng.uniform(-0.8, 0.8) * cfg.localizer.range_xy;
        const double dyaw = rng.uniform(-0.8, 0.8) * cfg.localizer.range_yaw;
        BoardLayout placed = nominal;
        placed.board_pose = compose(nominal.board_pose, Pose6{dx, dy, 0, 0, 0, dyaw});
        const LocalizeResult loc =
            localize(ref, placed, cfg.overhead, reg_eef, cfg.localizer, opt.threads);
        double ex = 0.0, ey = 0.0, eyaw = 0.0;
        for (size_t s = 0; s < placed.sockets.size(); ++s) {
            const Pose6 truth = socket_world_pose(placed, s);
            const Pose6& est = loc.hole_poses[s].second;
            ex = std::max(ex, std::abs(est.x - truth.x));
            ey = std::max(ey, std::abs(est.y - truth.y));
            eyaw = std::max(eyaw, std::abs(wrap_angle(est.theta_z - truth.theta_z)));
        }
        csv += std::to_string(i) + "," + format_csv_double(dx * 1e3) + "," +
               format_csv_double(dy * 1e3) + "," + format_csv_double(dyaw * 180.0 / M_PI) + "," +
               std::to_string(loc.iterations) + "," + format_csv_double(loc.correlation) + "," +
               format_csv_double(ex * 1e3) + "," + format_csv_double(ey * 1e3) + "," +
               format_csv_double(eyaw * 180.0 / M_PI) + "\n";
    }
    write_text(out_csv, csv);
    write_snapshot(cfg, out_csv);
}

} // namespace inbench
