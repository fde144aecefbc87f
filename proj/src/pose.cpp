#include "inbench/pose.hpp"

#include <algorithm>
#include <cmath>

namespace inbench {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

double snap_rel(double v) {
    constexpr double kQuantum = 0x1.0p-30; // ~9.3e-10
    return std::nearbyint(v / kQuantum) * kQuantum;
}

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (n == 0.0) return Quat::identity();
    const double h = 0.5 * angle;
    const double s = std::sin(h) / n;
    return {axis.x * s, axis.y * s, axis.z * s, std::cos(h)};
}

Quat Quat::from_zyx(double roll, double pitch, double yaw) {
    const double cr = std::cos(0.5 * roll), sr = std::sin(0.5 * roll);
    const double cp = std::cos(0.5 * pitch), sp = std::sin(0.5 * pitch);
    const double cy = std::cos(0.5 * yaw), sy = std::sin(0.5 * yaw);
    return {sr * cp * cy - cr * sp * sy,
            cr * sp * cy + sr * cp * sy,
            cr * cp * sy - sr * sp * cy,
            cr * cp * cy + sr * sp * sy};
}

std::array<double, 3> Quat::to_zyx() const {
    const double sinp = std::clamp(2.0 * (w * y - x * z), -1.0, 1.0);
    const double roll = std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
    const double pitch = std::asin(sinp);
    const double yaw = std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
    return {roll, pitch, yaw};
}

bool Pose6::finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
           std::isfinite(theta_x) && std::isfinite(theta_y) && std::isfinite(theta_z);
}

Pose6 make_pose(const Vec3& p, const Quat& q) {
    const auto ang = q.to_zyx();
    Pose6 out{p.x, p.y, p.z, ang[0], ang[1], ang[2]};
    out.normalize_angles();
    return out;
}

Pose6 compose(const Pose6& a, const Pose6& b) {
    const Quat qa = a.rotation();
    const Vec3 p = a.position() + qa.rotate(b.position());
    Quat q = qa * b.rotation();
    q.normalize();
    return make_pose(p, q);
}

Pose6 inverse(const Pose6& p) {
    const Quat qi = p.rotation().conjugate();
    const Vec3 t = qi.rotate(p.position() * -1.0);
    return make_pose(t, qi);
}

Vec3 transform_to_eef(const Vec3& world_point, const Pose6& eef_pose) {
    return eef_pose.rotation().conjugate().rotate(world_point - eef_pose.position());
}

Vec3 transform_to_world(const Vec3& eef_point, const Pose6& eef_pose) {
    return eef_pose.rotation().rotate(eef_point) + eef_pose.position();
}

CorrectiveAction corrective_label(const Pose6& current, const Pose6& goal) {
    CorrectiveAction d;
    d.dtheta_x = snap_rel(wrap_angle(goal.theta_x - current.theta_x));
    d.dtheta_y = snap_rel(wrap_angle(goal.theta_y - current.theta_y));
    d.dtheta_z = snap_rel(wrap_angle(goal.theta_z - current.theta_z));
    // Lateral part in the corrected yaw frame, i.e. the goal's yaw. This keeps
    // the label invariant under rigid world transforms and makes
    // apply_correction an exact inverse on the five components.
    const double yaw = current.theta_z + d.dtheta_z;
    const double c = std::cos(yaw), s = std::sin(yaw);
    const double ex = goal.x - current.x;
    const double ey = goal.y - current.y;
    d.dx = snap_rel(c * ex + s * ey);
    d.dy = snap_rel(-s * ex + c * ey);
    return d;
}

Pose6 apply_correction(const Pose6& current, const CorrectiveAction& d) {
    Pose6 out = current;
    out.theta_x = wrap_angle(current.theta_x + d.dtheta_x);
    out.theta_y = wrap_angle(current.theta_y + d.dtheta_y);
    out.theta_z = wrap_angle(current.theta_z + d.dtheta_z);
    const double c = std::cos(out.theta_z), s = std::sin(out.theta_z);
    out.x = current.x + c * d.dx - s * d.dy;
    out.y = current.y + s * d.dx + c * d.dy;
    return out;
}

Tilt tilt_of(const Quat& q) {
    const Vec3 axis = q.rotate({0.0, 0.0, 1.0});
    Tilt t;
    const double h = std::hypot(axis.x, axis.y);
    t.angle = std::atan2(h, axis.z);
    if (h > 1e-15) {
        t.dir_x = axis.x / h;
        t.dir_y = axis.y / h;
    }
    return t;
}

} // namespace inbench
