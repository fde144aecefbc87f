#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "inbench/config.hpp"

namespace inbench {

// Common overrides from the command line; unset fields fall back to the
// config. Every command writes `out` plus a config snapshot sidecar
// (`out` + ".config.json") sufficient to rerun it.
struct RunOptions {
    std::optional<uint64_t> seed;
    std::optional<int> trials;
    int threads = 1;
};

// collect -> dataset file at out_path
void run_collect(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_path);

// train -> parameter file; optional per-step loss CSV
void run_train(const BenchConfig& cfg, const RunOptions& opt, const std::string& dataset_path,
               const std::string& out_params, const std::string& loss_csv_path = "");

// eval -> CSV (one summary row plus per-trial rows)
void run_eval(const BenchConfig& cfg, const RunOptions& opt, const std::string& params_path,
              const std::string& out_csv);

// curve -> CSV (n_samples, success_rate, mean_duration_s), one row per size
void run_curve(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv);

// generalize -> CSV rows: baseline, 4 locations, color (with/without
// augmentation-trained params), perturbed shape
void run_generalize(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv);

// transfer -> CSV rows: fine-tuned at k added samples vs. from-scratch sizes
void run_transfer(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv);

// assembly -> CSV: localization row + one row per socket insertion
void run_assembly(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv);

// localize-demo -> CSV: recovered-vs-injected offsets for sampled boards
void run_localize_demo(const BenchConfig& cfg, const RunOptions& opt, const std::string& out_csv);

// Helpers shared with the acceptance suite.
BoardLayout assembly_board(const BenchConfig& cfg);
TaskSpec perturbed_shape_task(const TaskSpec& task, double scale);
TaskSpec recolored_task(const TaskSpec& task, const Rgb& peg_color);
std::string format_csv_double(double v);

} // namespace inbench
