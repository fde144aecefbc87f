#pragma once

#include <cstdint>
#include <utility>

#include "inbench/rng.hpp"
#include "inbench/task.hpp"
#include "inbench/wrench.hpp"

namespace inbench {

struct SimConfig {
    double k_normal = 5000.0;            // surface/floor spring [N/m]
    double k_lateral = 2000.0;           // hole wall spring [N/m]
    double pd_gain = 8.0;                // [1/s]
    double v_max = 0.05;                 // [m/s]
    double omega_max = 1.0;              // [rad/s]
    double dt = 0.01;                    // [s]
    double command_duration = 0.4;       // [s]
    double slip_moment_threshold = 0.5;  // [N*m]
    Pose6 slip_step{5e-5, 5e-5, 0.0,
                    8.7e-4, 8.7e-4, 8.7e-4}; // max per-event grasp increment
    // Fresh-grasp misalignment drawn per trial.
    double grasp_pos_noise = 3e-4;       // [m]
    double grasp_tilt_noise = 8.7e-3;    // [rad] (~0.5 deg)
    double grasp_yaw_noise = 1.31e-2;    // [rad] (~0.75 deg)
    uint64_t rng_seed = 1;

    int ticks_per_command() const;
    void validate() const;
};

// Grasp slippage caps (peg frame relative to the EEF frame).
constexpr double kGraspPosBound = 2e-3;       // [m]
constexpr double kGraspAngleBound = 5.236e-2; // [rad] (3 deg)

struct RobotState {
    Pose6 eef_pose;
    Pose6 grasp_offset; // peg frame relative to EEF frame
    bool in_contact = false;
    double sim_time = 0.0;
    // Whether the part tip is inside the opening (vs. resting on the contact
    // plane with virtual spring compression). Maintained by step_towards;
    // set it when constructing states below the surface directly.
    bool in_hole = false;
};

// One insertion scene: the socket's task with its world goal baked in, the
// world hole frame and the contact-plane height.
struct Scene {
    TaskSpec task;
    Pose6 hole_pose;        // world pose of the hole/shaft frame
    double surface_z = 0.0; // contact plane (board top, or shaft top when threading)
};

Scene make_scene(const BoardLayout& board, size_t socket_index);
Scene make_scene(const TaskSpec& task);

// Gripped-part configuration relative to the hole frame.
struct PartConfig {
    Vec2 lateral;      // part axis offset in the hole frame [m]
    double yaw = 0.0;  // part yaw relative to the hole frame [rad]
    Tilt tilt;         // part tilt vs. vertical (world frame lean direction)
    double tip_z = 0.0;
};
PartConfig part_config(const Scene& scene, const Pose6& eef_pose, const Pose6& grasp_offset);

// Effective containment margin loss due to tilt.
double tilt_margin(const TaskSpec& task, const Tilt& tilt);

// Pure contact wrench at the given configuration and normal penetration.
// F = (wall reaction, k_normal * penetration), M = r_centroid x F with the
// patch centroid shifted toward the tilt's low edge by peg_height*tan(tilt).
WrenchReading compute_wrench(const Scene& scene, const RobotState& state, double penetration,
                             const SimConfig& cfg);

// Advances one dt of PD tracking toward `target`, resolving surface, floor
// and wall contact. Throws NonFiniteState when integration diverges.
std::pair<RobotState, WrenchReading> step_towards(const RobotState& state, const Pose6& target,
                                                  const Scene& scene, const SimConfig& cfg);

// Perturbs the grasp when the contact moment exceeds the slip threshold;
// increments bounded by cfg.slip_step, result clamped to the grasp caps.
RobotState apply_slippage(const RobotState& state, const WrenchReading& wrench,
                          const SimConfig& cfg, Rng& rng);

// Contained with the tilt-reduced margin and within 1 mm of the goal height.
bool is_inserted(const Scene& scene, const RobotState& state);

// Fresh per-trial grasp misalignment.
Pose6 sample_grasp_offset(const SimConfig& cfg, Rng& rng);

} // namespace inbench
