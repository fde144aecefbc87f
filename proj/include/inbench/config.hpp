#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inbench/augment.hpp"
#include "inbench/collect.hpp"
#include "inbench/localize.hpp"
#include "inbench/model.hpp"
#include "inbench/policy.hpp"
#include "inbench/sensors.hpp"
#include "inbench/sim.hpp"
#include "inbench/task.hpp"

namespace inbench {

struct ExperimentConfig {
    int trials = 200;        // headline evaluations
    int curve_trials = 50;   // per curve/generalize/transfer point
    std::vector<int> curve_sizes{10, 15, 20, 25, 30, 50, 100, 200};
    int curve_collect_n = 210;

    std::string transfer_task_b = "triangle_1mm";
    std::vector<int> transfer_k{0, 5, 10, 15, 20};
    std::vector<int> scratch_sizes{10, 20, 30, 40, 50};
    int finetune_steps = 3000;
    int transfer_collect_n = 70;

    std::vector<Pose6> locations; // generalize-over-location board poses
    Rgb recolor{0.90, 0.90, 0.88};
    double shape_scale = 0.95;    // perturbed-peg factor for the shape condition

    std::vector<std::string> assembly_tasks{"square_1mm", "circle_1mm", "triangle_1mm"};
    double assembly_spacing = 45e-3;
    Pose6 assembly_board_pose{0.40, 0.10, 0.0, 0.0, 0.0, 0.0};
    Pose6 assembly_offset{8e-3, -6e-3, 0.0, 0.0, 0.0, 0.08726646259971647}; // 5 deg

    uint64_t seed = 1;

    void validate() const;
};

// Everything a benchmark command needs, assembled from one JSON document.
// File surfaces use millimeters/degrees; in memory everything is SI.
struct BenchConfig {
    TaskSpec task;
    BoardLayout board;       // defaults to a single socket holding `task`
    bool board_explicit = false;
    CameraModel camera;      // wrist camera
    CameraModel overhead;    // localizer camera
    SimConfig sim;
    SensorConfig sensors;
    CollectConfig collect;
    AugmentConfig augment;
    TrainConfig train;
    PolicyConfig policy;
    LocalizerConfig localizer;
    ExperimentConfig experiment;

    void validate() const;
};

BenchConfig default_config();
BenchConfig parse_config(const std::string& json_text);
BenchConfig load_config(const std::string& path);

// Effective configuration re-serialized (mm/deg units, fixed key order);
// parsing it back reproduces the run.
std::string config_snapshot_json(const BenchConfig& cfg);

} // namespace inbench
