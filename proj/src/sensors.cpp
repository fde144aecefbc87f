#include "inbench/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "inbench/errors.hpp"

namespace inbench {

CameraModel CameraModel::wrist45() { return CameraModel{}; }

CameraModel CameraModel::overhead() {
    CameraModel c;
    c.tilt = 0.0;
    c.height = 128;
    c.width = 128;
    c.scale = 1.0e-3;
    return c;
}

namespace {

struct PaintLayer {
    Polygon poly;
    Polygon cut;  // subtracted region (hoop openings); empty when unused
    Rgb color;
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;

    void finalize() {
        min_x = min_y = std::numeric_limits<double>::infinity();
        max_x = max_y = -std::numeric_limits<double>::infinity();
        for (const Vec2& v : poly) {
            min_x = std::min(min_x, v.x);
            max_x = std::max(max_x, v.x);
            min_y = std::min(min_y, v.y);
            max_y = std::max(max_y, v.y);
        }
    }
    bool covers(const Vec2& p) const {
        if (p.x < min_x || p.x > max_x || p.y < min_y || p.y > max_y) return false;
        if (!point_in_polygon(p, poly)) return false;
        return cut.empty() || !point_in_polygon(p, cut);
    }
};

Vec2 snap2(const Vec2& v) { return {snap_rel(v.x), snap_rel(v.y)}; }

// Socket frame relative to the EEF yaw frame, snapped.
struct RelPose {
    Vec2 xy;
    double yaw = 0.0;
};

RelPose relative_to_eef(const Pose6& eef, const Pose6& world) {
    const double c = std::cos(eef.theta_z), s = std::sin(eef.theta_z);
    const double ex = world.x - eef.x;
    const double ey = world.y - eef.y;
    RelPose r;
    r.xy = snap2({c * ex + s * ey, -s * ex + c * ey});
    r.yaw = snap_rel(wrap_angle(world.theta_z - eef.theta_z));
    return r;
}

constexpr double kRingWidth = 5e-3; // rendered hoop wall width

std::vector<PaintLayer> build_layers(const BoardLayout& board, const Scene& scene,
                                     const Pose6& eef_pose, const Pose6* grasp) {
    std::vector<PaintLayer> layers;
    for (size_t j = 0; j < board.sockets.size(); ++j) {
        const TaskSpec& t = board.sockets[j].task;
        const Pose6 socket_world = socket_world_pose(board, j);
        const RelPose rel = relative_to_eef(eef_pose, socket_world);
        PaintLayer l;
        if (t.mode == TaskMode::insertion) {
            l.poly = transformed(t.hole.vertices, rel.xy, rel.yaw);
        } else {
            l.poly = transformed(t.peg.vertices, rel.xy, rel.yaw); // shaft seen from above
        }
        l.color = t.socket_color;
        l.finalize();
        layers.push_back(std::move(l));

        if (j < board.occupied.size() && board.occupied[j]) {
            const Pose6 goal_world = compose(socket_world, t.goal_pose);
            const RelPose grel = relative_to_eef(eef_pose, goal_world);
            PaintLayer p;
            if (t.mode == TaskMode::insertion) {
                p.poly = transformed(t.peg.vertices, grel.xy, grel.yaw);
            } else {
                p.poly = transformed(offset_polygon(t.hole.vertices, kRingWidth), grel.xy, grel.yaw);
                p.cut = transformed(t.hole.vertices, grel.xy, grel.yaw);
            }
            p.color = t.peg_color;
            p.finalize();
            layers.push_back(std::move(p));
        }
    }
    if (grasp != nullptr) {
        const Vec2 gxy = snap2({grasp->x, grasp->y});
        const double gyaw = snap_rel(wrap_angle(grasp->theta_z));
        PaintLayer part;
        if (scene.task.mode == TaskMode::insertion) {
            part.poly = transformed(scene.task.peg.vertices, gxy, gyaw);
        } else {
            part.poly = transformed(offset_polygon(scene.task.hole.vertices, kRingWidth), gxy, gyaw);
            part.cut = transformed(scene.task.hole.vertices, gxy, gyaw);
        }
        part.color = scene.task.peg_color;
        part.finalize();
        layers.push_back(std::move(part));
    }
    return layers;
}

ImageTensor rasterize(const CameraModel& camera, const std::vector<PaintLayer>& layers,
                      const Rgb& background, int stride) {
    const int out_h = (camera.height + stride - 1) / stride;
    const int out_w = (camera.width + stride - 1) / stride;
    ImageTensor img = ImageTensor::filled(out_h, out_w, camera.channels);
    const double y_per_px = camera.scale / std::cos(camera.tilt);
    const double fx = camera.focus_offset.x;
    const double fy = camera.focus_offset.y;

    for (int r = 0; r < out_h; ++r) {
        const int row = r * stride;
        const double y = (camera.height * 0.5 - (row + 0.5)) * y_per_px + fy;
        for (int c = 0; c < out_w; ++c) {
            const int col = c * stride;
            const double x = ((col + 0.5) - camera.width * 0.5) * camera.scale + fx;
            const Vec2 p{x, y};
            Rgb color = background;
            for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
                if (it->covers(p)) {
                    color = it->color;
                    break;
                }
            }
            img.at(r, c, 0) = static_cast<float>(color.r);
            if (camera.channels > 1) img.at(r, c, 1) = static_cast<float>(color.g);
            if (camera.channels > 2) img.at(r, c, 2) = static_cast<float>(color.b);
        }
    }
    return img;
}

} // namespace

ImageTensor render_tilted(const CameraModel& camera, const BoardLayout& board,
                          const Scene& scene, const RobotState& state) {
    const double tip_z = state.eef_pose.z + state.grasp_offset.z;
    if (std::abs(tip_z - scene.surface_z) >= 2e-3)
        throw OutOfPlane("render_tilted: part tip is not at the contact surface");
    const auto layers = build_layers(board, scene, state.eef_pose, &state.grasp_offset);
    return rasterize(camera, layers, scene.task.board_color, 1);
}

ImageTensor render_board(const CameraModel& camera, const BoardLayout& board,
                         const Pose6& eef_pose, int stride) {
    Rgb background{0.42, 0.40, 0.38};
    if (!board.sockets.empty()) background = board.sockets.front().task.board_color;
    const auto layers = build_layers(board, Scene{}, eef_pose, nullptr);
    return rasterize(camera, layers, background, std::max(1, stride));
}

WrenchReading read_wrench(const WrenchReading& true_wrench, double force_std, double moment_std,
                          Rng& rng) {
    WrenchReading out = true_wrench;
    if (force_std > 0.0) {
        out.f.x += rng.normal(0.0, force_std);
        out.f.y += rng.normal(0.0, force_std);
        out.f.z += rng.normal(0.0, force_std);
    }
    if (moment_std > 0.0) {
        out.m.x += rng.normal(0.0, moment_std);
        out.m.y += rng.normal(0.0, moment_std);
        out.m.z += rng.normal(0.0, moment_std);
    }
    return out;
}

void write_ppm(const ImageTensor& img, const std::string& path) {
    if (img.channels != 3) throw FormatError("write_ppm needs a 3-channel image");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path);
    f << "P6\n" << img.width << " " << img.height << "\n255\n";
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                const float v = std::clamp(img.at(r, c, ch), 0.0f, 1.0f);
                const unsigned char byte =
                    static_cast<unsigned char>(std::lround(v * 255.0f));
                f.put(static_cast<char>(byte));
            }
        }
    }
    if (!f) throw IoError("short write: " + path);
}

} // namespace inbench
