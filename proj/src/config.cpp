#include "inbench/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "inbench/errors.hpp"

namespace inbench {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr double kDeg = M_PI / 180.0;
constexpr double kMm = 1e-3;

// Object reader that rejects unknown keys so config typos fail loudly.
class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + ": expected a JSON object");
    }
    ~Reader() = default;

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!seen_.count(item.key()))
                throw ConfigError(where_ + ": unknown key '" + item.key() + "'");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    template <typename T>
    void get(const std::string& key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where_ + "." + key + ": " + e.what());
        }
    }
    void get_mm(const std::string& key, double& out_m) {
        double v = out_m / kMm;
        get(key, v);
        out_m = v * kMm;
    }
    void get_deg(const std::string& key, double& out_rad) {
        double v = out_rad / kDeg;
        get(key, v);
        out_rad = v * kDeg;
    }
    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

Pose6 parse_pose(const json& j, const std::string& where) {
    Reader r(j, where);
    Pose6 p;
    r.get_mm("x_mm", p.x);
    r.get_mm("y_mm", p.y);
    r.get_mm("z_mm", p.z);
    r.get_deg("rx_deg", p.theta_x);
    r.get_deg("ry_deg", p.theta_y);
    r.get_deg("rz_deg", p.theta_z);
    r.finish();
    p.normalize_angles();
    return p;
}

ordered pose_json(const Pose6& p) {
    ordered j;
    j["x_mm"] = p.x / kMm;
    j["y_mm"] = p.y / kMm;
    j["z_mm"] = p.z / kMm;
    j["rx_deg"] = p.theta_x / kDeg;
    j["ry_deg"] = p.theta_y / kDeg;
    j["rz_deg"] = p.theta_z / kDeg;
    return j;
}

Rgb parse_rgb(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected [r, g, b]");
    Rgb c;
    c.r = j[0].get<double>();
    c.g = j[1].get<double>();
    c.b = j[2].get<double>();
    for (double v : {c.r, c.g, c.b})
        if (v < 0.0 || v > 1.0) throw ConfigError(where + ": components must be in [0, 1]");
    return c;
}

ordered rgb_json(const Rgb& c) { return ordered::array({c.r, c.g, c.b}); }

Polygon parse_polygon_mm(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of [x_mm, y_mm]");
    Polygon p;
    for (const auto& v : j) {
        if (!v.is_array() || v.size() != 2) throw ConfigError(where + ": bad vertex");
        p.push_back({v[0].get<double>() * kMm, v[1].get<double>() * kMm});
    }
    return p;
}

ordered polygon_json(const Polygon& p) {
    ordered j = ordered::array();
    for (const Vec2& v : p) j.push_back(ordered::array({v.x / kMm, v.y / kMm}));
    return j;
}

TaskSpec parse_task(const json& j, const std::string& where) {
    Reader r(j, where);
    TaskSpec t;
    std::string id;
    r.get("id", id);
    if (!id.empty()) t = builtin_task(id);

    if (r.has("peg_vertices_mm")) {
        t.peg = CrossSection::from_polygon(parse_polygon_mm(r.raw("peg_vertices_mm"),
                                                            where + ".peg_vertices_mm"));
        if (id.empty()) t.task_id = "custom";
    }
    r.get_mm("clearance_mm", t.clearance);
    if (r.has("hole_vertices_mm")) {
        t.hole = CrossSection::from_polygon(parse_polygon_mm(r.raw("hole_vertices_mm"),
                                                             where + ".hole_vertices_mm"));
    } else if (r.has("peg_vertices_mm") || r.has("clearance_mm")) {
        t.hole = CrossSection::from_polygon(offset_polygon(t.peg.vertices, t.clearance));
    }
    r.get_mm("peg_height_mm", t.peg_height);
    if (r.has("goal_pose")) t.goal_pose = parse_pose(r.raw("goal_pose"), where + ".goal_pose");
    if (r.has("peg_color")) t.peg_color = parse_rgb(r.raw("peg_color"), where + ".peg_color");
    if (r.has("socket_color"))
        t.socket_color = parse_rgb(r.raw("socket_color"), where + ".socket_color");
    if (r.has("board_color"))
        t.board_color = parse_rgb(r.raw("board_color"), where + ".board_color");
    r.get("friction_mu", t.friction_mu);
    std::string mode = t.mode == TaskMode::threading ? "threading" : "insertion";
    r.get("mode", mode);
    if (mode == "insertion") t.mode = TaskMode::insertion;
    else if (mode == "threading") t.mode = TaskMode::threading;
    else throw ConfigError(where + ".mode: expected 'insertion' or 'threading'");
    r.get("task_id", t.task_id);
    r.finish();
    t.validate();
    return t;
}

ordered task_json(const TaskSpec& t) {
    ordered j;
    j["task_id"] = t.task_id;
    j["mode"] = t.mode == TaskMode::threading ? "threading" : "insertion";
    j["peg_vertices_mm"] = polygon_json(t.peg.vertices);
    j["hole_vertices_mm"] = polygon_json(t.hole.vertices);
    j["clearance_mm"] = t.clearance / kMm;
    j["peg_height_mm"] = t.peg_height / kMm;
    j["goal_pose"] = pose_json(t.goal_pose);
    j["peg_color"] = rgb_json(t.peg_color);
    j["socket_color"] = rgb_json(t.socket_color);
    j["board_color"] = rgb_json(t.board_color);
    j["friction_mu"] = t.friction_mu;
    return j;
}

CameraModel parse_camera(const json& j, const std::string& where, const CameraModel& base) {
    Reader r(j, where);
    CameraModel c = base;
    r.get_deg("tilt_deg", c.tilt);
    r.get("height", c.height);
    r.get("width", c.width);
    r.get("channels", c.channels);
    double scale_mm = c.scale / kMm;
    r.get("scale_mm_per_px", scale_mm);
    c.scale = scale_mm * kMm;
    if (r.has("focus_offset"))
        c.focus_offset = parse_pose(r.raw("focus_offset"), where + ".focus_offset");
    r.finish();
    if (c.height <= 0 || c.width <= 0 || c.channels <= 0 || c.scale <= 0.0)
        throw ConfigError(where + ": bad camera geometry");
    return c;
}

ordered camera_json(const CameraModel& c) {
    ordered j;
    j["tilt_deg"] = c.tilt / kDeg;
    j["height"] = c.height;
    j["width"] = c.width;
    j["channels"] = c.channels;
    j["scale_mm_per_px"] = c.scale / kMm;
    j["focus_offset"] = pose_json(c.focus_offset);
    return j;
}

} // namespace

void ExperimentConfig::validate() const {
    if (trials <= 0 || curve_trials <= 0) throw ConfigError("experiment trial counts must be > 0");
    if (curve_sizes.empty()) throw ConfigError("experiment.curve_sizes must be non-empty");
    if (shape_scale <= 0.0) throw ConfigError("experiment.shape_scale must be > 0");
}

void BenchConfig::validate() const {
    task.validate();
    board.validate();
    sim.validate();
    collect.validate();
    augment.validate();
    train.validate();
    policy.validate();
    localizer.validate();
    experiment.validate();
}

BenchConfig default_config() {
    BenchConfig cfg;
    cfg.task = builtin_task("square_1mm");
    cfg.board = BoardLayout::single(cfg.task);
    cfg.camera = CameraModel::wrist45();
    cfg.overhead = CameraModel::overhead();
    cfg.train.label_scale = {cfg.collect.b0, cfg.collect.b0, cfg.collect.c0, cfg.collect.c0,
                             cfg.collect.c0};
    cfg.experiment.locations = {
        Pose6{0.25, 0.25, 0.0, 0.0, 0.0, M_PI / 2.0},
        Pose6{-0.25, 0.25, 0.0, 0.0, 0.0, M_PI},
        Pose6{-0.25, -0.25, 0.0, 0.0, 0.0, -M_PI / 2.0},
        Pose6{0.25, -0.25, 0.0, 0.0, 0.0, M_PI / 4.0},
    };
    return cfg;
}

BenchConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }

    BenchConfig cfg = default_config();
    Reader root(j, "config");

    if (root.has("task")) cfg.task = parse_task(root.raw("task"), "task");
    cfg.board = BoardLayout::single(cfg.task);

    if (root.has("board")) {
        const json& bj = root.raw("board");
        Reader br(bj, "board");
        BoardLayout board;
        if (br.has("pose")) board.board_pose = parse_pose(br.raw("pose"), "board.pose");
        if (br.has("sockets")) {
            const json& sockets = br.raw("sockets");
            if (!sockets.is_array()) throw ConfigError("board.sockets: expected an array");
            for (size_t i = 0; i < sockets.size(); ++i) {
                Reader sr(sockets[i], "board.sockets[" + std::to_string(i) + "]");
                Socket s;
                s.task = sr.has("task")
                             ? parse_task(sr.raw("task"),
                                          "board.sockets[" + std::to_string(i) + "].task")
                             : cfg.task;
                if (sr.has("offset"))
                    s.offset = parse_pose(sr.raw("offset"),
                                          "board.sockets[" + std::to_string(i) + "].offset");
                sr.finish();
                board.sockets.push_back(std::move(s));
                board.occupied.push_back(false);
            }
        } else {
            board.sockets.push_back({cfg.task, Pose6{}});
            board.occupied.push_back(false);
        }
        br.finish();
        cfg.board = std::move(board);
        cfg.board_explicit = true;
    }

    if (root.has("camera")) cfg.camera = parse_camera(root.raw("camera"), "camera", cfg.camera);
    if (root.has("overhead_camera"))
        cfg.overhead = parse_camera(root.raw("overhead_camera"), "overhead_camera", cfg.overhead);

    if (root.has("sim")) {
        Reader r(root.raw("sim"), "sim");
        SimConfig& s = cfg.sim;
        r.get("k_normal", s.k_normal);
        r.get("k_lateral", s.k_lateral);
        r.get("pd_gain", s.pd_gain);
        double v_mm = s.v_max / kMm;
        r.get("v_max_mm_s", v_mm);
        s.v_max = v_mm * kMm;
        r.get_deg("omega_max_deg_s", s.omega_max);
        r.get("dt_s", s.dt);
        r.get("command_duration_s", s.command_duration);
        r.get("slip_moment_threshold_nm", s.slip_moment_threshold);
        if (r.has("slip_step")) s.slip_step = parse_pose(r.raw("slip_step"), "sim.slip_step");
        r.get_mm("grasp_pos_noise_mm", s.grasp_pos_noise);
        r.get_deg("grasp_tilt_noise_deg", s.grasp_tilt_noise);
        r.get_deg("grasp_yaw_noise_deg", s.grasp_yaw_noise);
        r.get("seed", s.rng_seed);
        r.finish();
    }

    if (root.has("sensors")) {
        Reader r(root.raw("sensors"), "sensors");
        r.get("force_std_n", cfg.sensors.force_std);
        r.get("moment_std_nm", cfg.sensors.moment_std);
        r.finish();
    }

    bool label_scale_given = false;
    if (root.has("collect")) {
        Reader r(root.raw("collect"), "collect");
        CollectConfig& c = cfg.collect;
        r.get("n_p", c.n_p);
        r.get_mm("b0_mm", c.b0);
        r.get_deg("c0_deg", c.c0);
        r.get_mm("z_max_mm", c.z_max);
        r.get("f_th_n", c.f_th);
        r.get("m_th_nm", c.m_th);
        r.get("seed", c.rng_seed);
        r.finish();
    }

    if (root.has("augment")) {
        Reader r(root.raw("augment"), "augment");
        AugmentConfig& a = cfg.augment;
        r.get("jitter_h", a.jitter_h);
        r.get("jitter_s", a.jitter_s);
        r.get("jitter_v", a.jitter_v);
        r.get("randconv_std", a.randconv_std);
        r.get("pad_px", a.pad);
        r.get("crop_min_fraction", a.crop_min_fraction);
        r.get("p_jitter", a.p_jitter);
        r.get("p_gray", a.p_gray);
        r.get("p_randconv", a.p_randconv);
        r.get("visual", a.visual);
        r.get("force", a.force);
        r.get("seed", a.rng_seed);
        r.finish();
    }

    if (root.has("train")) {
        Reader r(root.raw("train"), "train");
        TrainConfig& t = cfg.train;
        r.get("batch_size", t.batch_size);
        r.get("steps", t.steps);
        r.get("lr", t.lr);
        r.get("beta1", t.beta1);
        r.get("beta2", t.beta2);
        r.get("eps", t.eps);
        r.get("f_unit_n", t.f_unit);
        r.get("m_unit_nm", t.m_unit);
        r.get("seed", t.rng_seed);
        if (r.has("label_scale")) {
            const json& ls = r.raw("label_scale");
            if (!ls.is_array() || ls.size() != 5)
                throw ConfigError("train.label_scale: expected 5 entries (mm, mm, deg, deg, deg)");
            t.label_scale = {ls[0].get<double>() * kMm, ls[1].get<double>() * kMm,
                             ls[2].get<double>() * kDeg, ls[3].get<double>() * kDeg,
                             ls[4].get<double>() * kDeg};
            label_scale_given = true;
        }
        r.finish();
    }
    if (!label_scale_given) {
        cfg.train.label_scale = {cfg.collect.b0, cfg.collect.b0, cfg.collect.c0, cfg.collect.c0,
                                 cfg.collect.c0};
    }

    if (root.has("policy")) {
        Reader r(root.raw("policy"), "policy");
        PolicyConfig& p = cfg.policy;
        r.get("t_f_s", p.t_f);
        r.get("f_desired_n", p.f_desired);
        double c_mm = p.compliance_c / kMm;
        r.get("compliance_mm_per_n", c_mm);
        p.compliance_c = c_mm * kMm;
        r.get("f_th_n", p.f_th);
        r.get("m_th_nm", p.m_th);
        r.get_mm("approach_height_mm", p.approach_height);
        r.finish();
    }

    if (root.has("localizer")) {
        Reader r(root.raw("localizer"), "localizer");
        LocalizerConfig& l = cfg.localizer;
        r.get_mm("range_xy_mm", l.range_xy);
        r.get_deg("range_yaw_deg", l.range_yaw);
        r.get_mm("coarse_step_xy_mm", l.coarse_step_xy);
        r.get_deg("coarse_step_yaw_deg", l.coarse_step_yaw);
        r.get_mm("fine_step_xy_mm", l.fine_step_xy);
        r.get_deg("fine_step_yaw_deg", l.fine_step_yaw);
        r.get("corr_threshold", l.corr_threshold);
        r.get("max_iters", l.max_iters);
        r.get("coarse_stride", l.coarse_stride);
        r.finish();
    }

    if (root.has("experiment")) {
        Reader r(root.raw("experiment"), "experiment");
        ExperimentConfig& e = cfg.experiment;
        r.get("trials", e.trials);
        r.get("curve_trials", e.curve_trials);
        r.get("curve_sizes", e.curve_sizes);
        r.get("curve_collect_n", e.curve_collect_n);
        r.get("transfer_task_b", e.transfer_task_b);
        r.get("transfer_k", e.transfer_k);
        r.get("scratch_sizes", e.scratch_sizes);
        r.get("finetune_steps", e.finetune_steps);
        r.get("transfer_collect_n", e.transfer_collect_n);
        if (r.has("locations")) {
            e.locations.clear();
            const json& locs = r.raw("locations");
            for (size_t i = 0; i < locs.size(); ++i)
                e.locations.push_back(
                    parse_pose(locs[i], "experiment.locations[" + std::to_string(i) + "]"));
        }
        if (r.has("recolor")) e.recolor = parse_rgb(r.raw("recolor"), "experiment.recolor");
        r.get("shape_scale", e.shape_scale);
        r.get("assembly_tasks", e.assembly_tasks);
        r.get_mm("assembly_spacing_mm", e.assembly_spacing);
        if (r.has("assembly_board_pose"))
            e.assembly_board_pose = parse_pose(r.raw("assembly_board_pose"),
                                               "experiment.assembly_board_pose");
        if (r.has("assembly_offset"))
            e.assembly_offset = parse_pose(r.raw("assembly_offset"), "experiment.assembly_offset");
        r.get("seed", e.seed);
        r.finish();
    }

    root.finish();
    cfg.validate();
    return cfg;
}

BenchConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string config_snapshot_json(const BenchConfig& cfg) {
    ordered j;
    j["task"] = task_json(cfg.task);

    ordered board;
    board["pose"] = pose_json(cfg.board.board_pose);
    board["sockets"] = ordered::array();
    for (const Socket& s : cfg.board.sockets) {
        ordered sj;
        sj["task"] = task_json(s.task);
        sj["offset"] = pose_json(s.offset);
        board["sockets"].push_back(sj);
    }
    j["board"] = board;

    j["camera"] = camera_json(cfg.camera);
    j["overhead_camera"] = camera_json(cfg.overhead);

    ordered sim;
    sim["k_normal"] = cfg.sim.k_normal;
    sim["k_lateral"] = cfg.sim.k_lateral;
    sim["pd_gain"] = cfg.sim.pd_gain;
    sim["v_max_mm_s"] = cfg.sim.v_max / kMm;
    sim["omega_max_deg_s"] = cfg.sim.omega_max / kDeg;
    sim["dt_s"] = cfg.sim.dt;
    sim["command_duration_s"] = cfg.sim.command_duration;
    sim["slip_moment_threshold_nm"] = cfg.sim.slip_moment_threshold;
    sim["slip_step"] = pose_json(cfg.sim.slip_step);
    sim["grasp_pos_noise_mm"] = cfg.sim.grasp_pos_noise / kMm;
    sim["grasp_tilt_noise_deg"] = cfg.sim.grasp_tilt_noise / kDeg;
    sim["grasp_yaw_noise_deg"] = cfg.sim.grasp_yaw_noise / kDeg;
    sim["seed"] = cfg.sim.rng_seed;
    j["sim"] = sim;

    ordered sensors;
    sensors["force_std_n"] = cfg.sensors.force_std;
    sensors["moment_std_nm"] = cfg.sensors.moment_std;
    j["sensors"] = sensors;

    ordered collect;
    collect["n_p"] = cfg.collect.n_p;
    collect["b0_mm"] = cfg.collect.b0 / kMm;
    collect["c0_deg"] = cfg.collect.c0 / kDeg;
    collect["z_max_mm"] = cfg.collect.z_max / kMm;
    collect["f_th_n"] = cfg.collect.f_th;
    collect["m_th_nm"] = cfg.collect.m_th;
    collect["seed"] = cfg.collect.rng_seed;
    j["collect"] = collect;

    ordered augment;
    augment["jitter_h"] = cfg.augment.jitter_h;
    augment["jitter_s"] = cfg.augment.jitter_s;
    augment["jitter_v"] = cfg.augment.jitter_v;
    augment["randconv_std"] = cfg.augment.randconv_std;
    augment["pad_px"] = cfg.augment.pad;
    augment["crop_min_fraction"] = cfg.augment.crop_min_fraction;
    augment["p_jitter"] = cfg.augment.p_jitter;
    augment["p_gray"] = cfg.augment.p_gray;
    augment["p_randconv"] = cfg.augment.p_randconv;
    augment["visual"] = cfg.augment.visual;
    augment["force"] = cfg.augment.force;
    augment["seed"] = cfg.augment.rng_seed;
    j["augment"] = augment;

    ordered train;
    train["batch_size"] = cfg.train.batch_size;
    train["steps"] = cfg.train.steps;
    train["lr"] = cfg.train.lr;
    train["beta1"] = cfg.train.beta1;
    train["beta2"] = cfg.train.beta2;
    train["eps"] = cfg.train.eps;
    train["label_scale"] = ordered::array(
        {cfg.train.label_scale[0] / kMm, cfg.train.label_scale[1] / kMm,
         cfg.train.label_scale[2] / kDeg, cfg.train.label_scale[3] / kDeg,
         cfg.train.label_scale[4] / kDeg});
    train["f_unit_n"] = cfg.train.f_unit;
    train["m_unit_nm"] = cfg.train.m_unit;
    train["seed"] = cfg.train.rng_seed;
    j["train"] = train;

    ordered policy;
    policy["t_f_s"] = cfg.policy.t_f;
    policy["f_desired_n"] = cfg.policy.f_desired;
    policy["compliance_mm_per_n"] = cfg.policy.compliance_c / kMm;
    policy["f_th_n"] = cfg.policy.f_th;
    policy["m_th_nm"] = cfg.policy.m_th;
    policy["approach_height_mm"] = cfg.policy.approach_height / kMm;
    j["policy"] = policy;

    ordered loc;
    loc["range_xy_mm"] = cfg.localizer.range_xy / kMm;
    loc["range_yaw_deg"] = cfg.localizer.range_yaw / kDeg;
    loc["coarse_step_xy_mm"] = cfg.localizer.coarse_step_xy / kMm;
    loc["coarse_step_yaw_deg"] = cfg.localizer.coarse_step_yaw / kDeg;
    loc["fine_step_xy_mm"] = cfg.localizer.fine_step_xy / kMm;
    loc["fine_step_yaw_deg"] = cfg.localizer.fine_step_yaw / kDeg;
    loc["corr_threshold"] = cfg.localizer.corr_threshold;
    loc["max_iters"] = cfg.localizer.max_iters;
    loc["coarse_stride"] = cfg.localizer.coarse_stride;
    j["localizer"] = loc;

    ordered exp;
    exp["trials"] = cfg.experiment.trials;
    exp["curve_trials"] = cfg.experiment.curve_trials;
    exp["curve_sizes"] = cfg.experiment.curve_sizes;
    exp["curve_collect_n"] = cfg.experiment.curve_collect_n;
    exp["transfer_task_b"] = cfg.experiment.transfer_task_b;
    exp["transfer_k"] = cfg.experiment.transfer_k;
    exp["scratch_sizes"] = cfg.experiment.scratch_sizes;
    exp["finetune_steps"] = cfg.experiment.finetune_steps;
    exp["transfer_collect_n"] = cfg.experiment.transfer_collect_n;
    exp["locations"] = ordered::array();
    for (const Pose6& p : cfg.experiment.locations) exp["locations"].push_back(pose_json(p));
    exp["recolor"] = rgb_json(cfg.experiment.recolor);
    exp["shape_scale"] = cfg.experiment.shape_scale;
    exp["assembly_tasks"] = cfg.experiment.assembly_tasks;
    exp["assembly_spacing_mm"] = cfg.experiment.assembly_spacing / kMm;
    exp["assembly_board_pose"] = pose_json(cfg.experiment.assembly_board_pose);
    exp["assembly_offset"] = pose_json(cfg.experiment.assembly_offset);
    exp["seed"] = cfg.experiment.seed;
    j["experiment"] = exp;

    return j.dump(2) + "\n";
}

} // namespace inbench
