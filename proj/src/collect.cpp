#include "inbench/collect.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "inbench/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "dataset format is little-endian; byte-swapped hosts are unsupported");

namespace inbench {

std::vector<std::string> Dataset::task_ids() const {
    std::vector<std::string> ids;
    for (const Sample& s : records) {
        if (std::find(ids.begin(), ids.end(), s.task_id) == ids.end()) ids.push_back(s.task_id);
    }
    return ids;
}

void Dataset::append(const Dataset& other) {
    if (records.empty()) {
        height = other.height;
        width = other.width;
        channels = other.channels;
    } else if (height != other.height || width != other.width || channels != other.channels) {
        throw FormatError("dataset append: image dimensions differ");
    }
    records.insert(records.end(), other.records.begin(), other.records.end());
}

Dataset Dataset::prefix(size_t n) const {
    Dataset d;
    d.height = height;
    d.width = width;
    d.channels = channels;
    d.records.assign(records.begin(), records.begin() + std::min(n, records.size()));
    return d;
}

void CollectConfig::validate() const {
    if (n_p < 0) throw ConfigError("collect.n_p must be >= 0");
    if (b0 < 0.0 || c0 < 0.0) throw ConfigError("collect.b0/c0 must be >= 0");
    if (z_max <= 0.0) throw ConfigError("collect.z_max must be > 0");
    if (f_th <= 0.0 || m_th <= 0.0) throw ConfigError("collect thresholds must be > 0");
}

void sample_target(const Vec3& r0, const Vec3& theta0, const CollectConfig& cfg, Rng& rng,
                   Vec3& r_out, Vec3& theta_out) {
    const double u = rng.uniform(-cfg.b0, cfg.b0);
    const double v = rng.uniform(-cfg.b0, cfg.b0);
    const double c = std::cos(theta0.z), s = std::sin(theta0.z);
    r_out = {r0.x + c * u - s * v, r0.y + s * u + c * v, r0.z};
    theta_out = {wrap_angle(theta0.x + rng.uniform(-cfg.c0, cfg.c0)),
                 wrap_angle(theta0.y + rng.uniform(-cfg.c0, cfg.c0)),
                 wrap_angle(theta0.z + rng.uniform(-cfg.c0, cfg.c0))};
}

namespace {

CorrectiveAction clamp_to_box(CorrectiveAction d, double b0, double c0) {
    d.dx = std::clamp(d.dx, -b0, b0);
    d.dy = std::clamp(d.dy, -b0, b0);
    d.dtheta_x = std::clamp(d.dtheta_x, -c0, c0);
    d.dtheta_y = std::clamp(d.dtheta_y, -c0, c0);
    d.dtheta_z = std::clamp(d.dtheta_z, -c0, c0);
    return d;
}

} // namespace

Dataset collect_backward(const BoardLayout& board, size_t socket_index, const CollectConfig& cfg,
                         const SimConfig& sim, const SensorConfig& sensors,
                         const CameraModel& camera) {
    cfg.validate();
    sim.validate();
    const Scene scene = make_scene(board, socket_index);
    const Pose6& goal = scene.task.goal_pose;

    {
        RobotState at_goal;
        at_goal.eef_pose = goal;
        if (!is_inserted(scene, at_goal))
            throw GoalUnreachable("goal pose of task '" + scene.task.task_id +
                                  "' does not satisfy insertion");
    }

    Dataset out;
    out.height = camera.height;
    out.width = camera.width;
    out.channels = camera.channels;

    const int max_ticks = static_cast<int>(5.0 * (cfg.z_max + 0.02) / (sim.v_max * sim.dt)) + 200;

    for (int i = 0; i < cfg.n_p; ++i) {
        Rng rng(mix_seed(cfg.rng_seed, static_cast<uint64_t>(i)));
        Vec3 r, theta;
        sample_target({goal.x, goal.y, goal.z}, {goal.theta_x, goal.theta_y, goal.theta_z}, cfg,
                      rng, r, theta);
        const Pose6 target{r.x, r.y, r.z, theta.x, theta.y, theta.z};

        RobotState state;
        state.eef_pose = target;
        state.eef_pose.z += cfg.z_max;
        state.grasp_offset = sample_grasp_offset(sim, rng);

        for (int tick = 0; tick < max_ticks; ++tick) {
            auto [next, wrench] = step_towards(state, target, scene, sim);
            const WrenchReading measured = read_wrench(wrench, sensors.force_std,
                                                       sensors.moment_std, rng);
            state = apply_slippage(next, wrench, sim, rng);

            if (measured.max_force() >= cfg.f_th || measured.max_moment() >= cfg.m_th) {
                Sample s;
                s.image = render_tilted(camera, board, scene, state);
                s.wrench = measured;
                s.label = clamp_to_box(corrective_label(state.eef_pose, goal), cfg.b0, cfg.c0);
                s.task_id = scene.task.task_id;
                s.trial_index = static_cast<uint32_t>(i);
                s.contact_pose = state.eef_pose;
                out.records.push_back(std::move(s));
                break;
            }
            const double perr = std::hypot(state.eef_pose.x - target.x,
                                           state.eef_pose.y - target.y,
                                           state.eef_pose.z - target.z);
            if (perr < 5e-5) break; // reached target without a collision: drop
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// binary io

namespace {

void put_u16(std::ostream& f, uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); }
void put_u64(std::ostream& f, uint64_t v) { f.write(reinterpret_cast<const char*>(&v), 8); }
void put_f32(std::ostream& f, float v) { f.write(reinterpret_cast<const char*>(&v), 4); }

uint16_t get_u16(std::istream& f) {
    uint16_t v = 0;
    if (!f.read(reinterpret_cast<char*>(&v), 2)) throw TruncatedFile("unexpected end of file");
    return v;
}
uint64_t get_u64(std::istream& f) {
    uint64_t v = 0;
    if (!f.read(reinterpret_cast<char*>(&v), 8)) throw TruncatedFile("unexpected end of file");
    return v;
}
float get_f32(std::istream& f) {
    float v = 0;
    if (!f.read(reinterpret_cast<char*>(&v), 4)) throw TruncatedFile("unexpected end of file");
    return v;
}

constexpr char kDatasetMagic[4] = {'I', 'N', 'B', 'N'};
constexpr uint16_t kDatasetVersion = 1;

} // namespace

void write_dataset(const Dataset& d, const std::string& path) {
    for (const Sample& s : d.records) {
        if (s.image.height != d.height || s.image.width != d.width ||
            s.image.channels != d.channels)
            throw FormatError("dataset record image dimensions differ from header");
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(kDatasetMagic, 4);
    put_u16(f, kDatasetVersion);
    put_u16(f, static_cast<uint16_t>(d.height));
    put_u16(f, static_cast<uint16_t>(d.width));
    put_u16(f, static_cast<uint16_t>(d.channels));
    put_u64(f, d.records.size());
    const char pad[4] = {0, 0, 0, 0};
    f.write(pad, 4);

    for (const Sample& s : d.records) {
        f.write(reinterpret_cast<const char*>(s.image.data.data()),
                static_cast<std::streamsize>(s.image.data.size() * 4));
        const double w6[6] = {s.wrench.f.x, s.wrench.f.y, s.wrench.f.z,
                              s.wrench.m.x, s.wrench.m.y, s.wrench.m.z};
        for (double v : w6) put_f32(f, static_cast<float>(v));
        for (double v : s.label.as_array()) put_f32(f, static_cast<float>(v));
        const double p6[6] = {s.contact_pose.x,       s.contact_pose.y,
                              s.contact_pose.z,       s.contact_pose.theta_x,
                              s.contact_pose.theta_y, s.contact_pose.theta_z};
        for (double v : p6) put_f32(f, static_cast<float>(v));
        if (s.task_id.size() > 0xFFFF) throw FormatError("task_id longer than 65535 bytes");
        put_u16(f, static_cast<uint16_t>(s.task_id.size()));
        f.write(s.task_id.data(), static_cast<std::streamsize>(s.task_id.size()));
    }
    if (!f) throw IoError("short write: " + path);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    char magic[4];
    if (!f.read(magic, 4)) throw TruncatedFile(path + ": missing header");
    if (std::memcmp(magic, kDatasetMagic, 4) != 0) throw FormatError(path + ": bad magic");
    const uint16_t version = get_u16(f);
    if (version != kDatasetVersion) throw FormatError(path + ": unsupported version");
    Dataset d;
    d.height = get_u16(f);
    d.width = get_u16(f);
    d.channels = get_u16(f);
    const uint64_t count = get_u64(f);
    char pad[4];
    if (!f.read(pad, 4)) throw TruncatedFile(path + ": missing header padding");
    if (d.height <= 0 || d.width <= 0 || d.channels <= 0) {
        if (count > 0) throw FormatError(path + ": zero image dimensions with records");
    }

    const size_t pixels = static_cast<size_t>(d.height) * d.width * d.channels;
    d.records.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        Sample s;
        s.image.height = d.height;
        s.image.width = d.width;
        s.image.channels = d.channels;
        s.image.data.resize(pixels);
        if (!f.read(reinterpret_cast<char*>(s.image.data.data()),
                    static_cast<std::streamsize>(pixels * 4)))
            throw TruncatedFile(path + ": truncated image data");
        double w6[6];
        for (double& v : w6) v = get_f32(f);
        s.wrench.f = {w6[0], w6[1], w6[2]};
        s.wrench.m = {w6[3], w6[4], w6[5]};
        std::array<double, 5> lab{};
        for (double& v : lab) v = get_f32(f);
        s.label = CorrectiveAction::from_array(lab);
        double p6[6];
        for (double& v : p6) v = get_f32(f);
        s.contact_pose = {p6[0], p6[1], p6[2], p6[3], p6[4], p6[5]};
        const uint16_t len = get_u16(f);
        s.task_id.resize(len);
        if (len > 0 && !f.read(s.task_id.data(), len))
            throw TruncatedFile(path + ": truncated task id");
        s.trial_index = static_cast<uint32_t>(i);
        d.records.push_back(std::move(s));
    }
    return d;
}

} // namespace inbench
