#pragma once

#include <cstdint>
#include <vector>

#include "inbench/model.hpp"
#include "inbench/sensors.hpp"
#include "inbench/sim.hpp"

namespace inbench {

struct PolicyConfig {
    double t_f = 10.0;          // trial time budget [s]
    double f_desired = 5.0;     // compliance setpoint [N]
    double compliance_c = 2e-4; // [m/N]
    double f_th = 3.0;          // residual activation thresholds
    double m_th = 0.3;
    double approach_height = 50e-3; // initial hover above the target [m]

    void validate() const;
};

struct TrialResult {
    bool success = false;
    double duration = 0.0; // [s]
    int n_commands = 0;
    bool residual_activated = false;
    Pose6 final_pose;
};

// Optional per-tick trace row for debugging dumps.
struct TraceRow {
    double t;
    Pose6 pose;
    WrenchReading wrench;
    bool residual;
};

// Base approach toward T; on the first threshold crossing the policy latches
// into residual mode, where each command applies the network correction plus
// the z compliance term, executed for command_duration. Ends on insertion or
// when sim time exceeds t_f.
TrialResult run_trial(const BoardLayout& board, size_t socket_index, const Pose6& target,
                      const ModelParams& params, const PolicyConfig& cfg, const SimConfig& sim,
                      const SensorConfig& sensors, const CameraModel& camera, Rng& rng,
                      std::vector<TraceRow>* trace = nullptr);

struct EvalSummary {
    double success_rate = 0.0;
    double mean_duration = 0.0; // over all trials [s]
    std::vector<TrialResult> trials;
};

// n_test targets drawn uniformly from the (b0, c0) error box around the goal,
// fresh grasp offsets per trial; per-trial seeds derive from `seed` so results
// are independent of scheduling.
EvalSummary evaluate(const BoardLayout& board, size_t socket_index, const ModelParams& params,
                     int n_test, double error_b0, double error_c0, const PolicyConfig& cfg,
                     const SimConfig& sim, const SensorConfig& sensors, const CameraModel& camera,
                     uint64_t seed, int threads = 1);

} // namespace inbench
