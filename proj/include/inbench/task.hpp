#pragma once

#include <string>
#include <vector>

#include "inbench/polygon.hpp"
#include "inbench/pose.hpp"

namespace inbench {

enum class ShapeKind { convex, nonconvex };
enum class TaskMode { insertion, threading };

struct Rgb {
    double r = 0.0, g = 0.0, b = 0.0;
};

// Planar cross-section: simple CCW polygon, meters, centered on the part axis.
struct CrossSection {
    Polygon vertices;
    ShapeKind kind = ShapeKind::convex;

    static CrossSection from_polygon(Polygon p);
};

struct TaskSpec {
    CrossSection peg;
    CrossSection hole;
    double clearance = 1e-3;       // per-side gap at perfect alignment [m]
    double peg_height = 12e-3;     // gripped part / shaft height, drives tilt effects [m]
    Pose6 goal_pose;               // EEF pose at full insertion (the recorded goal)
    Rgb peg_color{0.10, 0.10, 0.12};
    Rgb socket_color{0.04, 0.04, 0.05};
    Rgb board_color{0.42, 0.40, 0.38};
    TaskMode mode = TaskMode::insertion;
    double friction_mu = 0.3;
    std::string task_id;

    // Throws ConfigError when invariants fail (degenerate polygons, clearance
    // not realized by the hole at zero offset, ...).
    void validate() const;
};

struct Socket {
    TaskSpec task;
    Pose6 offset; // socket frame relative to board center
};

struct BoardLayout {
    Pose6 board_pose;
    std::vector<Socket> sockets;
    std::vector<bool> occupied; // plug left in hole

    void validate() const;
    static BoardLayout single(const TaskSpec& task);
};

// World-frame hole pose of socket i.
Pose6 socket_world_pose(const BoardLayout& board, size_t index);

// Copy of socket i's task with goal_pose rebased to the board's world pose.
TaskSpec effective_task(const BoardLayout& board, size_t index);

// True iff the peg cross-section, rotated by theta_z and shifted by
// lateral_offset relative to the hole, lies strictly inside it (roles swap in
// threading mode). Boundary contact counts as not contained.
bool contains_with_clearance(const TaskSpec& task, const Vec2& lateral_offset, double theta_z);

// As above but requiring a positive boundary margin (used for tilt-reduced
// effective clearance).
bool contains_with_margin(const TaskSpec& task, const Vec2& lateral_offset, double theta_z,
                          double margin);

// Signed containment margin at the given offset.
double offset_margin(const TaskSpec& task, const Vec2& lateral_offset, double theta_z);

// Area and centroid of the part of the peg tip resting on the surface
// |peg \ hole| (threading: shaft top not covered by the hoop opening).
// Centroid is expressed in the EEF frame; it is (0,0) when the area vanishes.
struct ContactPatch {
    double area = 0.0;
    Vec2 centroid;
};
ContactPatch contact_patch(const TaskSpec& task, const Vec2& lateral_offset, double theta_z);

// Built-in task family ids: {square, circle, triangle, plug} x {03mm, 1mm}
// clearances plus thread_square_1mm / thread_triangle_1mm.
TaskSpec builtin_task(const std::string& id);
std::vector<std::string> builtin_task_ids();

} // namespace inbench
