#pragma once

#include <cmath>

#include "inbench/pose.hpp"

namespace inbench {

// Force/moment pair measured at the EEF, expressed in the EEF yaw frame.
struct WrenchReading {
    Vec3 f; // [N]
    Vec3 m; // [N*m]

    bool finite() const {
        return std::isfinite(f.x) && std::isfinite(f.y) && std::isfinite(f.z) &&
               std::isfinite(m.x) && std::isfinite(m.y) && std::isfinite(m.z);
    }
    double max_force() const { return std::max({std::abs(f.x), std::abs(f.y), std::abs(f.z)}); }
    double max_moment() const { return std::max({std::abs(m.x), std::abs(m.y), std::abs(m.z)}); }
};

} // namespace inbench
