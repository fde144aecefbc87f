#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inbench/sensors.hpp"
#include "inbench/sim.hpp"

namespace inbench {

// One collected training record. trial_index is in-memory metadata (the
// originating approach index); it is not part of the file format and is
// reassigned on read.
struct Sample {
    ImageTensor image;
    WrenchReading wrench;
    CorrectiveAction label;
    std::string task_id;
    uint32_t trial_index = 0;
    Pose6 contact_pose;
};

struct Dataset {
    int height = 0, width = 0, channels = 0;
    std::vector<Sample> records;

    size_t count() const { return records.size(); }
    std::vector<std::string> task_ids() const;
    void append(const Dataset& other);
    Dataset prefix(size_t n) const;
};

struct CollectConfig {
    int n_p = 100;            // approaches per collection run
    double b0 = 10e-3;        // lateral sampling half-width [m]
    double c0 = 0.17453292519943295; // angular half-width [rad] (10 deg)
    double z_max = 50e-3;     // approach start height above the target [m]
    double f_th = 3.0;        // capture force threshold [N]
    double m_th = 0.3;        // capture moment threshold [N*m]
    uint64_t rng_seed = 7;

    void validate() const;
};

// Uniform target draw around (r0, theta0): lateral box +-b0 applied in the
// goal yaw frame, z passed through, each angle +-c0.
void sample_target(const Vec3& r0, const Vec3& theta0, const CollectConfig& cfg, Rng& rng,
                   Vec3& r_out, Vec3& theta_out);

// Backward collection: approach sampled targets from z_max above, descend,
// record (image, wrench, corrective label) on the first tick the measured
// wrench exceeds a threshold. Approaches that reach the target cleanly record
// nothing. Throws GoalUnreachable when the goal pose itself does not insert.
Dataset collect_backward(const BoardLayout& board, size_t socket_index, const CollectConfig& cfg,
                         const SimConfig& sim, const SensorConfig& sensors,
                         const CameraModel& camera);

// File format (little-endian):
//   header: "INBN" | u16 version=1 | u16 H | u16 W | u16 C | u64 count | 4 pad
//   per record: image H*W*C f32, wrench 6*f32, label 5*f32,
//               contact pose 6*f32, task_id u16 length + UTF-8 bytes
void write_dataset(const Dataset& d, const std::string& path);
Dataset read_dataset(const std::string& path);

} // namespace inbench
