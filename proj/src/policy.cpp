#include "inbench/policy.hpp"

#include <cmath>

#include "inbench/errors.hpp"
#include "inbench/parallel.hpp"

namespace inbench {

void PolicyConfig::validate() const {
    if (t_f <= 0.0) throw ConfigError("policy.t_f must be > 0");
    if (compliance_c <= 0.0) throw ConfigError("policy.compliance_c must be > 0");
    if (f_th <= 0.0 || m_th <= 0.0) throw ConfigError("policy thresholds must be > 0");
    if (approach_height <= 0.0) throw ConfigError("policy.approach_height must be > 0");
}

TrialResult run_trial(const BoardLayout& board, size_t socket_index, const Pose6& target,
                      const ModelParams& params, const PolicyConfig& cfg, const SimConfig& sim,
                      const SensorConfig& sensors, const CameraModel& camera, Rng& rng,
                      std::vector<TraceRow>* trace) {
    cfg.validate();
    sim.validate();
    const Scene scene = make_scene(board, socket_index);

    RobotState state;
    state.eef_pose = target;
    state.eef_pose.z += cfg.approach_height;
    state.grasp_offset = sample_grasp_offset(sim, rng);

    TrialResult result;
    result.n_commands = 1; // the base approach command
    bool residual = false;
    Pose6 next_point = target;
    const int ticks_per_command = sim.ticks_per_command();
    int ticks_in_command = 0;
    bool issue_command = false;

    while (true) {
        auto [next, wrench] = step_towards(state, next_point, scene, sim);
        const WrenchReading measured =
            read_wrench(wrench, sensors.force_std, sensors.moment_std, rng);
        state = apply_slippage(next, wrench, sim, rng);
        ++ticks_in_command;

        if (trace) trace->push_back({state.sim_time, state.eef_pose, measured, residual});

        if (is_inserted(scene, state)) {
            result.success = true;
            break;
        }
        if (state.sim_time > cfg.t_f) break;

        if (!residual &&
            (measured.max_force() >= cfg.f_th || measured.max_moment() >= cfg.m_th)) {
            residual = true;
            result.residual_activated = true;
            issue_command = true; // interrupt the base command at contact
        }
        if (residual && (issue_command || ticks_in_command >= ticks_per_command)) {
            const double tip_z = state.eef_pose.z + state.grasp_offset.z;
            CorrectiveAction delta; // zero unless the capture precondition holds
            if (std::abs(tip_z - scene.surface_z) < 2e-3) {
                const ImageTensor img = render_tilted(camera, board, scene, state);
                delta = forward(params, img, measured);
            }
            const double dz = -cfg.compliance_c * (cfg.f_desired - measured.f.z);
            next_point = apply_correction(state.eef_pose, delta);
            next_point.z = state.eef_pose.z + dz;
            ++result.n_commands;
            ticks_in_command = 0;
            issue_command = false;
        }
    }

    result.duration = state.sim_time;
    result.final_pose = state.eef_pose;
    return result;
}

EvalSummary evaluate(const BoardLayout& board, size_t socket_index, const ModelParams& params,
                     int n_test, double error_b0, double error_c0, const PolicyConfig& cfg,
                     const SimConfig& sim, const SensorConfig& sensors, const CameraModel& camera,
                     uint64_t seed, int threads) {
    const Scene scene = make_scene(board, socket_index);
    const Pose6& goal = scene.task.goal_pose;

    EvalSummary summary;
    summary.trials.resize(static_cast<size_t>(std::max(0, n_test)));

    CollectConfig box;
    box.b0 = error_b0;
    box.c0 = error_c0;

    parallel_for(summary.trials.size(), threads, [&](size_t i) {
        Rng rng(mix_seed(seed, i));
        Vec3 r, theta;
        sample_target({goal.x, goal.y, goal.z}, {goal.theta_x, goal.theta_y, goal.theta_z}, box,
                      rng, r, theta);
        const Pose6 target{r.x, r.y, r.z, theta.x, theta.y, theta.z};
        summary.trials[i] =
            run_trial(board, socket_index, target, params, cfg, sim, sensors, camera, rng);
    });

    double successes = 0.0, duration = 0.0;
    for (const TrialResult& t : summary.trials) {
        successes += t.success ? 1.0 : 0.0;
        duration += t.duration;
    }
    const double n = static_cast<double>(std::max<size_t>(1, summary.trials.size()));
    summary.success_rate = successes / n;
    summary.mean_duration = duration / n;
    return summary;
}

} // namespace inbench
