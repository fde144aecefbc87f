#include "inbench/localize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "inbench/errors.hpp"
#include "inbench/parallel.hpp"

static_assert(std::endian::native == std::endian::little,
              "reference format is little-endian; byte-swapped hosts are unsupported");

namespace inbench {

void LocalizerConfig::validate() const {
    if (range_xy <= 0.0 || range_yaw <= 0.0) throw ConfigError("localizer ranges must be > 0");
    if (coarse_step_xy <= 0.0 || fine_step_xy <= 0.0 || coarse_step_yaw <= 0.0 ||
        fine_step_yaw <= 0.0)
        throw ConfigError("localizer steps must be > 0");
    if (corr_threshold <= 0.0 || corr_threshold > 1.0)
        throw ConfigError("localizer corr_threshold must be in (0, 1]");
    if (max_iters <= 0) throw ConfigError("localizer max_iters must be > 0");
}

ReferenceRecord register_reference(const BoardLayout& board, const CameraModel& camera,
                                   const Pose6& eef) {
    ReferenceRecord rec;
    rec.reference_image = render_board(camera, board, eef);
    rec.reference_eef = eef;
    const Pose6 eef_inv = inverse(eef);
    for (size_t i = 0; i < board.sockets.size(); ++i) {
        rec.hole_deltas.emplace_back(board.sockets[i].task.task_id,
                                     compose(eef_inv, socket_world_pose(board, i)));
    }
    return rec;
}

double normalized_cross_correlation(const ImageTensor& a, const ImageTensor& b) {
    if (!a.same_shape(b) || a.data.empty()) return 0.0;
    const size_t n = a.data.size();
    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ma += a.data[i];
        mb += b.data[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double da = a.data[i] - ma;
        const double db = b.data[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa < 1e-12 || sbb < 1e-12) return saa < 1e-12 && sbb < 1e-12 ? 1.0 : 0.0;
    return sab / std::sqrt(saa * sbb);
}

namespace {

ImageTensor strided_view(const ImageTensor& img, int stride) {
    if (stride <= 1) return img;
    const int oh = (img.height + stride - 1) / stride;
    const int ow = (img.width + stride - 1) / stride;
    ImageTensor out = ImageTensor::filled(oh, ow, img.channels);
    for (int r = 0; r < oh; ++r)
        for (int c = 0; c < ow; ++c)
            for (int k = 0; k < img.channels; ++k)
                out.at(r, c, k) = img.at(r * stride, c * stride, k);
    return out;
}

// 3x3 box blur (replicate borders). Sub-pixel misalignment then degrades the
// correlation quadratically instead of linearly, which keeps the convergence
// threshold reachable at sub-grid residuals.
ImageTensor blur3(const ImageTensor& img) {
    ImageTensor out = ImageTensor::filled(img.height, img.width, img.channels);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            for (int k = 0; k < img.channels; ++k) {
                float acc = 0.0f;
                for (int dr = -1; dr <= 1; ++dr) {
                    const int rr = std::clamp(r + dr, 0, img.height - 1);
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int cc = std::clamp(c + dc, 0, img.width - 1);
                        acc += img.at(rr, cc, k);
                    }
                }
                out.at(r, c, k) = acc / 9.0f;
            }
        }
    }
    return out;
}

struct Candidate {
    double dx, dy, dyaw;
    double corr = -2.0;
};

// EEF shifted in world axes, rotated about its own origin. Keeping the
// translation axes fixed lets successive refinements stay on one grid.
Pose6 moved_eef(const Pose6& eef, double dx, double dy, double dyaw) {
    Pose6 out = eef;
    out.x += dx;
    out.y += dy;
    out.theta_z = wrap_angle(out.theta_z + dyaw);
    return out;
}

Candidate grid_search(const ReferenceRecord& ref, const BoardLayout& board,
                      const CameraModel& camera, const Pose6& eef, double half_xy,
                      double step_xy, double half_yaw, double step_yaw, int stride,
                      int threads) {
    const ImageTensor ref_view = blur3(strided_view(ref.reference_image, stride));
    std::vector<Candidate> cands;
    const int nx = static_cast<int>(std::floor(half_xy / step_xy + 1e-9));
    const int ny = static_cast<int>(std::floor(half_yaw / step_yaw + 1e-9));
    for (int ix = -nx; ix <= nx; ++ix)
        for (int iy = -nx; iy <= nx; ++iy)
            for (int iw = -ny; iw <= ny; ++iw)
                cands.push_back({ix * step_xy, iy * step_xy, iw * step_yaw});

    parallel_for(cands.size(), threads, [&](size_t i) {
        Candidate& c = cands[i];
        const ImageTensor img =
            render_board(camera, board, moved_eef(eef, c.dx, c.dy, c.dyaw), stride);
        c.corr = normalized_cross_correlation(blur3(img), ref_view);
    });

    // argmax with lexicographic tie-break on (dx, dy, dyaw)
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i) {
        const Candidate& a = cands[i];
        const Candidate& b = cands[best];
        if (a.corr > b.corr ||
            (a.corr == b.corr && std::tie(a.dx, a.dy, a.dyaw) < std::tie(b.dx, b.dy, b.dyaw)))
            best = i;
    }
    return cands[best];
}

} // namespace

LocalizeResult localize(const ReferenceRecord& ref, const BoardLayout& board,
                        const CameraModel& camera, const Pose6& start_eef,
                        const LocalizerConfig& cfg, int threads) {
    cfg.validate();
    LocalizeResult result;
    Pose6 eef = start_eef;

    const ImageTensor ref_blurred = blur3(ref.reference_image);
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        result.iterations = iter;
        const ImageTensor current = render_board(camera, board, eef);
        result.correlation = normalized_cross_correlation(blur3(current), ref_blurred);
        if (result.correlation >= cfg.corr_threshold) {
            result.final_eef = eef;
            for (const auto& [id, delta] : ref.hole_deltas)
                result.hole_poses.emplace_back(id, compose(eef, delta));
            return result;
        }
        const Candidate coarse =
            grid_search(ref, board, camera, eef, cfg.range_xy, cfg.coarse_step_xy, cfg.range_yaw,
                        cfg.coarse_step_yaw, cfg.coarse_stride, threads);
        Candidate fine = grid_search(ref, board, camera,
                                     moved_eef(eef, coarse.dx, coarse.dy, coarse.dyaw),
                                     2.0 * cfg.coarse_step_xy, cfg.fine_step_xy,
                                     2.0 * cfg.coarse_step_yaw, cfg.fine_step_yaw, 1, threads);
        eef = moved_eef(moved_eef(eef, coarse.dx, coarse.dy, coarse.dyaw), fine.dx, fine.dy,
                        fine.dyaw);
    }
    throw LocalizationFailed("correlation never reached the threshold; board offset out of range");
}

// ---------------------------------------------------------------------------
// reference files

namespace {
constexpr char kRefMagic[4] = {'I', 'N', 'B', 'R'};
constexpr uint16_t kRefVersion = 1;
} // namespace

void write_reference(const ReferenceRecord& rec, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    auto put_u16 = [&](uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
    auto put_f32 = [&](float v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    f.write(kRefMagic, 4);
    put_u16(kRefVersion);
    put_u16(static_cast<uint16_t>(rec.reference_image.height));
    put_u16(static_cast<uint16_t>(rec.reference_image.width));
    put_u16(static_cast<uint16_t>(rec.reference_image.channels));
    auto put_pose = [&](const Pose6& p) {
        for (double v : {p.x, p.y, p.z, p.theta_x, p.theta_y, p.theta_z})
            put_f32(static_cast<float>(v));
    };
    put_pose(rec.reference_eef);
    f.write(reinterpret_cast<const char*>(rec.reference_image.data.data()),
            static_cast<std::streamsize>(rec.reference_image.data.size() * 4));
    put_u16(static_cast<uint16_t>(rec.hole_deltas.size()));
    for (const auto& [id, delta] : rec.hole_deltas) {
        put_u16(static_cast<uint16_t>(id.size()));
        f.write(id.data(), static_cast<std::streamsize>(id.size()));
        put_pose(delta);
    }
    if (!f) throw IoError("short write: " + path);
}

ReferenceRecord read_reference(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    char magic[4];
    if (!f.read(magic, 4)) throw TruncatedFile(path + ": missing header");
    if (std::memcmp(magic, kRefMagic, 4) != 0) throw FormatError(path + ": bad magic");
    auto get_u16 = [&]() {
        uint16_t v = 0;
        if (!f.read(reinterpret_cast<char*>(&v), 2)) throw TruncatedFile(path);
        return v;
    };
    auto get_f32 = [&]() {
        float v = 0;
        if (!f.read(reinterpret_cast<char*>(&v), 4)) throw TruncatedFile(path);
        return v;
    };
    if (get_u16() != kRefVersion) throw FormatError(path + ": unsupported version");
    ReferenceRecord rec;
    const int h = get_u16(), w = get_u16(), c = get_u16();
    auto get_pose = [&]() {
        Pose6 p;
        p.x = get_f32(); p.y = get_f32(); p.z = get_f32();
        p.theta_x = get_f32(); p.theta_y = get_f32(); p.theta_z = get_f32();
        return p;
    };
    rec.reference_eef = get_pose();
    rec.reference_image = ImageTensor::filled(h, w, c);
    if (!f.read(reinterpret_cast<char*>(rec.reference_image.data.data()),
                static_cast<std::streamsize>(rec.reference_image.data.size() * 4)))
        throw TruncatedFile(path + ": truncated image");
    const int count = get_u16();
    for (int i = 0; i < count; ++i) {
        const int len = get_u16();
        std::string id(static_cast<size_t>(len), '\0');
        if (len > 0 && !f.read(id.data(), len)) throw TruncatedFile(path + ": delta id");
        rec.hole_deltas.emplace_back(std::move(id), get_pose());
    }
    return rec;
}

} // namespace inbench
