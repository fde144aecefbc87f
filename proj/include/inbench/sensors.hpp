#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inbench/rng.hpp"
#include "inbench/sim.hpp"
#include "inbench/wrench.hpp"

namespace inbench {

// Row-major H x W x C raster, values in [0, 1].
struct ImageTensor {
    int height = 0, width = 0, channels = 0;
    std::vector<float> data;

    static ImageTensor filled(int h, int w, int c, float v = 0.0f) {
        ImageTensor img;
        img.height = h;
        img.width = w;
        img.channels = c;
        img.data.assign(static_cast<size_t>(h) * w * c, v);
        return img;
    }
    float& at(int row, int col, int ch) {
        return data[(static_cast<size_t>(row) * width + col) * channels + ch];
    }
    float at(int row, int col, int ch) const {
        return data[(static_cast<size_t>(row) * width + col) * channels + ch];
    }
    size_t size() const { return data.size(); }
    bool same_shape(const ImageTensor& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
};

struct CameraModel {
    double tilt = M_PI / 4.0;     // wrist camera tilt from vertical
    Pose6 focus_offset;           // EEF -> focus point (between the fingers)
    int height = 64, width = 64, channels = 3;
    double scale = 0.5e-3;        // meters per pixel along the image x axis

    static CameraModel wrist45();
    // Wider top-down view used for board localization.
    static CameraModel overhead();
};

// Wrench sensor noise (zero disables it). The tilt signal rides on moments of
// a few mN*m, so the moment channel stays an order of magnitude below it.
struct SensorConfig {
    double force_std = 0.01;    // [N]
    double moment_std = 0.0002; // [N*m]
};

// Renders the contact-plane scene in the EEF-attached camera frame:
// board background, socket openings, already-inserted plugs, then the gripped
// part (with its grasp offset) on top. The 45-degree tilt appears as a
// cos(tilt) foreshortening along the image vertical axis. Relative poses are
// snapped to a fixed grid, so scenes equal up to a rigid world transform
// rasterize bit-identically. Throws OutOfPlane unless the part tip is within
// 2 mm of the contact plane.
ImageTensor render_tilted(const CameraModel& camera, const BoardLayout& board,
                          const Scene& scene, const RobotState& state);

// Same rasterizer without the contact precondition or the gripped part;
// used by the localizer's overhead camera. Strides subsample pixels.
ImageTensor render_board(const CameraModel& camera, const BoardLayout& board,
                         const Pose6& eef_pose, int stride = 1);

// Adds zero-mean Gaussian noise, stddev = (force_std, moment_std) per axis.
WrenchReading read_wrench(const WrenchReading& true_wrench, double force_std, double moment_std,
                          Rng& rng);

// Binary PPM (P6, 8-bit, round(v*255)); debug aid, not part of the pipeline.
void write_ppm(const ImageTensor& img, const std::string& path);

} // namespace inbench
