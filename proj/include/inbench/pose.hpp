#pragma once

#include <array>
#include <cmath>

namespace inbench {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

// Unit quaternion, scalar-last storage (x, y, z, w).
struct Quat {
    double x = 0.0, y = 0.0, z = 0.0, w = 1.0;

    static Quat identity() { return {}; }
    static Quat from_axis_angle(const Vec3& axis, double angle);

    // Intrinsic Z-Y-X composition: R = Rz(yaw) * Ry(pitch) * Rx(roll).
    static Quat from_zyx(double roll, double pitch, double yaw);

    Quat operator*(const Quat& o) const {
        return {w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w,
                w * o.w - x * o.x - y * o.y - z * o.z};
    }

    Quat conjugate() const { return {-x, -y, -z, w}; }

    Vec3 rotate(const Vec3& v) const {
        // v' = v + 2w(q x v) + 2 q x (q x v)
        const Vec3 q{x, y, z};
        const Vec3 t = q.cross(v);
        const Vec3 u = q.cross(t);
        return v + t * (2.0 * w) + u * 2.0;
    }

    void normalize() {
        const double n = std::sqrt(x * x + y * y + z * z + w * w);
        x /= n; y /= n; z /= n; w /= n;
    }

    // Canonical Z-Y-X angle extraction (roll, pitch, yaw).
    std::array<double, 3> to_zyx() const;
};

// Wrap into (-pi, pi].
double wrap_angle(double a);

// Snap to a fixed binary grid (quantum 2^-30 m or rad, ~1e-9). Used on
// EEF-relative quantities so that scenes equal up to a rigid world transform
// produce bit-identical renders and labels.
double snap_rel(double v);

// End-effector pose: position in meters, intrinsic Z-Y-X angles in radians,
// each normalized to (-pi, pi].
struct Pose6 {
    double x = 0.0, y = 0.0, z = 0.0;
    double theta_x = 0.0, theta_y = 0.0, theta_z = 0.0;

    Vec3 position() const { return {x, y, z}; }
    Quat rotation() const { return Quat::from_zyx(theta_x, theta_y, theta_z); }

    void normalize_angles() {
        theta_x = wrap_angle(theta_x);
        theta_y = wrap_angle(theta_y);
        theta_z = wrap_angle(theta_z);
    }

    bool finite() const;
};

Pose6 make_pose(const Vec3& p, const Quat& q);

// Full rigid composition a * b (b expressed in a's frame) and its inverse.
Pose6 compose(const Pose6& a, const Pose6& b);
Pose6 inverse(const Pose6& p);

// Point maps between the world frame and the EEF frame.
Vec3 transform_to_eef(const Vec3& world_point, const Pose6& eef_pose);
Vec3 transform_to_world(const Vec3& eef_point, const Pose6& eef_pose);

// Five-component corrective motion (no z; z comes from force compliance).
// Lateral part is expressed in the yaw frame of the corrected pose, angles are
// plain wrapped differences of the Z-Y-X extractions.
struct CorrectiveAction {
    double dx = 0.0, dy = 0.0;
    double dtheta_x = 0.0, dtheta_y = 0.0, dtheta_z = 0.0;

    std::array<double, 5> as_array() const { return {dx, dy, dtheta_x, dtheta_y, dtheta_z}; }
    static CorrectiveAction from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
};

// Correction that maps `current` onto `goal` in the five labeled components.
// Components are snapped to the relative-quantity grid.
CorrectiveAction corrective_label(const Pose6& current, const Pose6& goal);

// Applies a corrective action: angles first, then the lateral step in the
// corrected yaw frame. z is left untouched.
Pose6 apply_correction(const Pose6& current, const CorrectiveAction& d);

// Tilt of the EEF z-axis away from vertical: magnitude and the horizontal
// lean direction (unit vector, zero when upright).
struct Tilt {
    double angle = 0.0;
    double dir_x = 0.0, dir_y = 0.0;
};
Tilt tilt_of(const Quat& q);

} // namespace inbench
