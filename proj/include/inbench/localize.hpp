#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "inbench/sensors.hpp"

namespace inbench {

// Pre-registered view of the board from the overhead camera, with per-hole
// deltas relative to the EEF pose at registration time.
struct ReferenceRecord {
    ImageTensor reference_image;
    Pose6 reference_eef;
    std::vector<std::pair<std::string, Pose6>> hole_deltas; // (task_id, EEF-frame delta)
};

struct LocalizerConfig {
    double range_xy = 20e-3;     // search box half-width [m]
    double range_yaw = 0.2617993877991494; // 15 deg [rad]
    double coarse_step_xy = 2e-3;
    double coarse_step_yaw = 0.03490658503988659; // 2 deg
    double fine_step_xy = 0.5e-3;
    double fine_step_yaw = 0.008726646259971648; // 0.5 deg
    double corr_threshold = 0.995;
    int max_iters = 8;
    int coarse_stride = 2; // pixel subsampling during the coarse pass

    void validate() const;
};

ReferenceRecord register_reference(const BoardLayout& board, const CameraModel& camera,
                                   const Pose6& eef);

// File format: "INBR" | u16 version=1 | u16 H W C | eef pose 6 x f32 |
// image f32 | u16 delta count | per delta: u16 id length + bytes + 6 x f32.
void write_reference(const ReferenceRecord& rec, const std::string& path);
ReferenceRecord read_reference(const std::string& path);

struct LocalizeResult {
    std::vector<std::pair<std::string, Pose6>> hole_poses; // world frame
    int iterations = 0;
    double correlation = 0.0;
    Pose6 final_eef;
};

// Closed-loop template alignment: render, grid-search the (dx, dy, dyaw)
// maximizing normalized cross-correlation against the reference
// (coarse-to-fine), move, repeat until the correlation threshold is reached.
// Throws LocalizationFailed when it never is within max_iters.
LocalizeResult localize(const ReferenceRecord& ref, const BoardLayout& board,
                        const CameraModel& camera, const Pose6& start_eef,
                        const LocalizerConfig& cfg, int threads = 1);

// Normalized cross-correlation over all pixels/channels; 1 for identical
// non-constant images.
double normalized_cross_correlation(const ImageTensor& a, const ImageTensor& b);

} // namespace inbench
