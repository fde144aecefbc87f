#include "inbench/sim.hpp"

#include <algorithm>
#include <cmath>

#include "inbench/errors.hpp"

namespace inbench {

int SimConfig::ticks_per_command() const {
    return static_cast<int>(std::lround(command_duration / dt));
}

void SimConfig::validate() const {
    if (dt <= 0.0) throw ConfigError("sim.dt must be > 0");
    if (k_normal <= 0.0 || k_lateral <= 0.0 || pd_gain <= 0.0)
        throw ConfigError("sim gains must be > 0");
    if (v_max <= 0.0 || omega_max <= 0.0) throw ConfigError("sim velocity limits must be > 0");
    const double n = command_duration / dt;
    if (std::abs(n - std::lround(n)) > 1e-9)
        throw ConfigError("command_duration must be an integer multiple of dt");
}

Scene make_scene(const BoardLayout& board, size_t socket_index) {
    Scene s;
    s.task = effective_task(board, socket_index);
    s.hole_pose = socket_world_pose(board, socket_index);
    s.surface_z = s.hole_pose.z;
    if (s.task.mode == TaskMode::threading) s.surface_z += s.task.peg_height;
    return s;
}

Scene make_scene(const TaskSpec& task) {
    // Standalone scene: the hole frame sits on the z=0 surface directly above
    // the goal (goal z is the insertion depth below the surface).
    Scene s;
    s.task = task;
    s.hole_pose = task.goal_pose;
    s.hole_pose.z = task.mode == TaskMode::threading ? task.goal_pose.z : 0.0;
    s.hole_pose.theta_x = 0.0;
    s.hole_pose.theta_y = 0.0;
    s.surface_z = s.hole_pose.z;
    if (task.mode == TaskMode::threading) s.surface_z += task.peg_height;
    return s;
}

PartConfig part_config(const Scene& scene, const Pose6& eef_pose, const Pose6& grasp_offset) {
    const Pose6 part = compose(eef_pose, grasp_offset);
    const Pose6 rel = compose(inverse(scene.hole_pose), part);
    PartConfig pc;
    pc.lateral = {rel.x, rel.y};
    pc.yaw = rel.theta_z;
    pc.tilt = tilt_of(part.rotation());
    pc.tip_z = part.z;
    return pc;
}

double tilt_margin(const TaskSpec& task, const Tilt& tilt) {
    return task.peg_height * std::abs(std::sin(tilt.angle));
}

namespace {

// Wall reaction on the gripped part, in the world (board) frame.
Vec2 wall_force_world(const Scene& scene, const PartConfig& pc) {
    Polygon inner, outer;
    const TaskSpec& t = scene.task;
    if (t.mode == TaskMode::insertion) {
        inner = transformed(t.peg.vertices, pc.lateral, pc.yaw);
        outer = t.hole.vertices;
    } else {
        inner = t.peg.vertices;
        outer = transformed(t.hole.vertices, pc.lateral, pc.yaw);
    }
    Violation v;
    if (polygon_inside(inner, outer) || !deepest_violation(inner, outer, v)) return {0.0, 0.0};
    // push restores the inner polygon; the reaction on the gripped part points
    // the same way for insertion and opposite for threading (fixed shaft).
    const double sgn = t.mode == TaskMode::insertion ? 1.0 : -1.0;
    const Vec2 dir_hole = v.push * sgn;
    // hole frame -> world
    const double c = std::cos(scene.hole_pose.theta_z);
    const double s = std::sin(scene.hole_pose.theta_z);
    const Vec2 dir_world{c * dir_hole.x - s * dir_hole.y, s * dir_hole.x + c * dir_hole.y};
    return dir_world * v.depth;
}

Vec2 world_to_eef_yaw(const Vec2& v, double eef_yaw) {
    const double c = std::cos(eef_yaw), s = std::sin(eef_yaw);
    return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

} // namespace

WrenchReading compute_wrench(const Scene& scene, const RobotState& state, double penetration,
                             const SimConfig& cfg) {
    WrenchReading w;
    if (penetration < 0.0) penetration = 0.0;
    const PartConfig pc = part_config(scene, state.eef_pose, state.grasp_offset);
    const double eef_yaw = state.eef_pose.theta_z;

    // normal force from surface or floor springs
    const double fz = cfg.k_normal * std::max(0.0, penetration);

    // wall reaction exists only for a part inside the opening
    Vec2 f_lat_world{0.0, 0.0};
    if (state.in_hole && pc.tip_z < scene.surface_z) {
        const Vec2 fw = wall_force_world(scene, pc);
        f_lat_world = fw * cfg.k_lateral;
    }
    const Vec2 f_lat = world_to_eef_yaw(f_lat_world, eef_yaw);
    w.f = {f_lat.x, f_lat.y, fz};

    if (fz > 0.0 || f_lat_world.norm() > 0.0) {
        // contact centroid relative to the part axis, EEF yaw frame
        const ContactPatch patch = contact_patch(scene.task, pc.lateral, pc.yaw);
        Vec2 centroid = patch.area > 0.0 ? patch.centroid : Vec2{0.0, 0.0};
        const double shift = scene.task.peg_height * std::tan(pc.tilt.angle);
        const Vec2 lean_eef = world_to_eef_yaw({pc.tilt.dir_x, pc.tilt.dir_y}, eef_yaw);
        centroid = centroid + lean_eef * shift;
        const Vec3 r{centroid.x, centroid.y, 0.0};
        w.m = r.cross(w.f);
    }
    return w;
}

std::pair<RobotState, WrenchReading> step_towards(const RobotState& state, const Pose6& target,
                                                  const Scene& scene, const SimConfig& cfg) {
    const Pose6& pose = state.eef_pose;

    // first-order PD with velocity clamps
    Vec3 v{(target.x - pose.x) * cfg.pd_gain, (target.y - pose.y) * cfg.pd_gain,
           (target.z - pose.z) * cfg.pd_gain};
    const double vn = v.norm();
    if (vn > cfg.v_max) v = v * (cfg.v_max / vn);
    Vec3 omega{wrap_angle(target.theta_x - pose.theta_x) * cfg.pd_gain,
               wrap_angle(target.theta_y - pose.theta_y) * cfg.pd_gain,
               wrap_angle(target.theta_z - pose.theta_z) * cfg.pd_gain};
    const double on = omega.norm();
    if (on > cfg.omega_max) omega = omega * (cfg.omega_max / on);

    Pose6 desired = pose;
    desired.x += v.x * cfg.dt;
    desired.y += v.y * cfg.dt;
    desired.z += v.z * cfg.dt;
    desired.theta_x = wrap_angle(desired.theta_x + omega.x * cfg.dt);
    desired.theta_y = wrap_angle(desired.theta_y + omega.y * cfg.dt);
    desired.theta_z = wrap_angle(desired.theta_z + omega.z * cfg.dt);

    RobotState next = state;
    next.eef_pose = desired;
    next.sim_time = state.sim_time + cfg.dt;

    const TaskSpec& task = scene.task;

    PartConfig pc = part_config(scene, next.eef_pose, next.grasp_offset);
    const double margin_loss = tilt_margin(task, pc.tilt);
    const bool contained = contains_with_margin(task, pc.lateral, pc.yaw, margin_loss);

    double penetration = 0.0;
    bool wall_contact = false;

    if (!state.in_hole) {
        const double cur_tip = state.eef_pose.z + state.grasp_offset.z;
        if (pc.tip_z < scene.surface_z) {
            if (contained) {
                // enters the opening; spring compression from a prior surface
                // rest releases (tip snaps back to the plane before descending)
                next.in_hole = true;
                if (cur_tip < scene.surface_z) {
                    next.eef_pose.z += scene.surface_z - cur_tip;
                }
            } else {
                // resting on the contact plane; the commanded pose compresses
                // the normal spring
                penetration = scene.surface_z - pc.tip_z;
            }
        }
    } else {
        // inside the opening: keep the walls from being penetrated beyond a
        // small cap, scaling back the lateral/yaw part of the step
        const double cap = 0.35 * task.clearance;
        auto margin_at = [&](double alpha) {
            Pose6 probe = next.eef_pose;
            probe.x = pose.x + (desired.x - pose.x) * alpha;
            probe.y = pose.y + (desired.y - pose.y) * alpha;
            probe.theta_z = wrap_angle(pose.theta_z +
                                       wrap_angle(desired.theta_z - pose.theta_z) * alpha);
            const PartConfig p = part_config(scene, probe, next.grasp_offset);
            return offset_margin(task, p.lateral, p.yaw) - tilt_margin(task, p.tilt);
        };
        if (margin_at(1.0) < -cap) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 24; ++it) {
                const double mid = 0.5 * (lo + hi);
                (margin_at(mid) >= -cap ? lo : hi) = mid;
            }
            next.eef_pose.x = pose.x + (desired.x - pose.x) * lo;
            next.eef_pose.y = pose.y + (desired.y - pose.y) * lo;
            next.eef_pose.theta_z =
                wrap_angle(pose.theta_z + wrap_angle(desired.theta_z - pose.theta_z) * lo);
        }
        pc = part_config(scene, next.eef_pose, next.grasp_offset);
        wall_contact = offset_margin(task, pc.lateral, pc.yaw) < 0.0;

        // floor spring at the goal depth
        const double floor_z = scene.task.goal_pose.z;
        if (next.eef_pose.z < floor_z) penetration = floor_z - next.eef_pose.z;

        if (wall_contact) {
            // jamming: wall friction can absorb the normal drive
            const Vec2 fw = wall_force_world(scene, pc) * cfg.k_lateral;
            const double dz_step = std::abs(next.eef_pose.z - pose.z);
            if (task.friction_mu * fw.norm() > cfg.k_normal * dz_step && dz_step > 0.0) {
                next.eef_pose.z = pose.z;
            }
        }
        if (pc.tip_z >= scene.surface_z) next.in_hole = false; // withdrew
    }

    next.in_contact = penetration > 0.0 || wall_contact;
    if (!next.eef_pose.finite()) throw NonFiniteState("step_towards produced non-finite pose");

    const WrenchReading w = compute_wrench(scene, next, penetration, cfg);
    if (!w.finite()) throw NonFiniteState("step_towards produced non-finite wrench");
    return {next, w};
}

RobotState apply_slippage(const RobotState& state, const WrenchReading& wrench,
                          const SimConfig& cfg, Rng& rng) {
    const double m_norm = wrench.m.norm();
    if (m_norm <= cfg.slip_moment_threshold) return state;
    RobotState next = state;
    auto bump = [&](double cur, double step, double bound) {
        const double inc = rng.uniform(-step, step);
        return std::clamp(cur + inc, -bound, bound);
    };
    next.grasp_offset.x = bump(state.grasp_offset.x, cfg.slip_step.x, kGraspPosBound);
    next.grasp_offset.y = bump(state.grasp_offset.y, cfg.slip_step.y, kGraspPosBound);
    next.grasp_offset.theta_x = bump(state.grasp_offset.theta_x, cfg.slip_step.theta_x, kGraspAngleBound);
    next.grasp_offset.theta_y = bump(state.grasp_offset.theta_y, cfg.slip_step.theta_y, kGraspAngleBound);
    next.grasp_offset.theta_z = bump(state.grasp_offset.theta_z, cfg.slip_step.theta_z, kGraspAngleBound);
    return next;
}

bool is_inserted(const Scene& scene, const RobotState& state) {
    const PartConfig pc = part_config(scene, state.eef_pose, state.grasp_offset);
    if (!contains_with_margin(scene.task, pc.lateral, pc.yaw, tilt_margin(scene.task, pc.tilt)))
        return false;
    return state.eef_pose.z - scene.task.goal_pose.z < 1e-3;
}

Pose6 sample_grasp_offset(const SimConfig& cfg, Rng& rng) {
    Pose6 g;
    g.x = rng.uniform(-cfg.grasp_pos_noise, cfg.grasp_pos_noise);
    g.y = rng.uniform(-cfg.grasp_pos_noise, cfg.grasp_pos_noise);
    g.theta_x = rng.uniform(-cfg.grasp_tilt_noise, cfg.grasp_tilt_noise);
    g.theta_y = rng.uniform(-cfg.grasp_tilt_noise, cfg.grasp_tilt_noise);
    g.theta_z = rng.uniform(-cfg.grasp_yaw_noise, cfg.grasp_yaw_noise);
    return g;
}

} // namespace inbench
