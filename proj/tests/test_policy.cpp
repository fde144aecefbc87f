#include <doctest.h>

#include <cmath>

#include "inbench/policy.hpp"

using namespace inbench;

namespace {

const double kMm = 1e-3;

struct Rig {
    BoardLayout board = BoardLayout::single(builtin_task("square_1mm"));
    PolicyConfig policy;
    SimConfig sim;
    SensorConfig sensors;
    CameraModel camera = CameraModel::wrist45();
    ModelParams zero_head;

    Rig() {
        TrainConfig tc;
        zero_head = init_params(net::NetDims{}, tc);
    }
};

} // namespace

TEST_CASE("aligned target succeeds without residual activation") {
    Rig rig;
    rig.sim.grasp_pos_noise = 0.0;
    rig.sim.grasp_tilt_noise = 0.0;
    rig.sim.grasp_yaw_noise = 0.0;
    rig.sensors.force_std = 0.0;
    rig.sensors.moment_std = 0.0;
    const Scene scene = make_scene(rig.board, 0);
    Rng rng(1);
    const TrialResult r = run_trial(rig.board, 0, scene.task.goal_pose, rig.zero_head, rig.policy,
                                    rig.sim, rig.sensors, rig.camera, rng);
    CHECK(r.success);
    CHECK_FALSE(r.residual_activated);
    CHECK(r.duration <= rig.policy.t_f);
}

TEST_CASE("5mm offset with a zero-head policy fails at the time budget") {
    Rig rig;
    const Scene scene = make_scene(rig.board, 0);
    Pose6 target = scene.task.goal_pose;
    target.x += 5 * kMm;
    Rng rng(2);
    const TrialResult r = run_trial(rig.board, 0, target, rig.zero_head, rig.policy, rig.sim,
                                    rig.sensors, rig.camera, rng);
    CHECK_FALSE(r.success);
    CHECK(r.residual_activated);
    CHECK(r.duration > rig.policy.t_f);
    CHECK(r.duration <= rig.policy.t_f + rig.sim.command_duration);
}

TEST_CASE("residual mode latches: once active it never returns to base") {
    Rig rig;
    const Scene scene = make_scene(rig.board, 0);
    Pose6 target = scene.task.goal_pose;
    target.x += 4 * kMm;
    Rng rng(3);
    std::vector<TraceRow> trace;
    run_trial(rig.board, 0, target, rig.zero_head, rig.policy, rig.sim, rig.sensors, rig.camera,
              rng, &trace);
    bool seen_residual = false;
    for (const TraceRow& row : trace) {
        if (row.residual) seen_residual = true;
        if (seen_residual) CHECK(row.residual);
    }
    CHECK(seen_residual);
}

TEST_CASE("compliance sign: low force descends, high force retreats") {
    const PolicyConfig cfg;
    // dz = -c (f_desired - f_z)
    const double dz_low = -cfg.compliance_c * (cfg.f_desired - 0.0);
    CHECK(dz_low < 0.0);
    const double dz_high = -cfg.compliance_c * (cfg.f_desired - 12.0);
    CHECK(dz_high > 0.0);
    const double dz_eq = -cfg.compliance_c * (cfg.f_desired - cfg.f_desired);
    CHECK(dz_eq == 0.0);
}

TEST_CASE("zero error box evaluates to success rate 1.0 regardless of the policy") {
    Rig rig;
    rig.sim.grasp_pos_noise = 0.0;
    rig.sim.grasp_tilt_noise = 0.0;
    rig.sim.grasp_yaw_noise = 0.0;
    const EvalSummary s = evaluate(rig.board, 0, rig.zero_head, 10, 0.0, 0.0, rig.policy, rig.sim,
                                   rig.sensors, rig.camera, 7);
    CHECK(s.success_rate == 1.0);
    CHECK(s.mean_duration < rig.policy.t_f);
}

TEST_CASE("zero-head policy on the full error box scores at most 5%") {
    Rig rig;
    const EvalSummary s = evaluate(rig.board, 0, rig.zero_head, 120, 10 * kMm,
                                   10.0 * M_PI / 180.0, rig.policy, rig.sim, rig.sensors,
                                   rig.camera, 11);
    CHECK(s.success_rate <= 0.05);
}

TEST_CASE("evaluation is deterministic per seed") {
    Rig rig;
    auto run = [&]() {
        return evaluate(rig.board, 0, rig.zero_head, 12, 10 * kMm, 0.17, rig.policy, rig.sim,
                        rig.sensors, rig.camera, 13);
    };
    const EvalSummary a = run();
    const EvalSummary b = run();
    CHECK(a.success_rate == b.success_rate);
    CHECK(a.mean_duration == b.mean_duration);
    REQUIRE(a.trials.size() == b.trials.size());
    for (size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].duration == b.trials[i].duration);
        CHECK(a.trials[i].n_commands == b.trials[i].n_commands);
    }
}

TEST_CASE("hard timeout holds across a batch of trials") {
    Rig rig;
    const EvalSummary s = evaluate(rig.board, 0, rig.zero_head, 40, 10 * kMm, 0.17, rig.policy,
                                   rig.sim, rig.sensors, rig.camera, 17);
    for (const TrialResult& t : s.trials) {
        CHECK(t.duration <= rig.policy.t_f + rig.sim.command_duration);
        if (t.success) CHECK(t.duration <= rig.policy.t_f);
    }
}
