#include "inbench/task.hpp"

#include <cmath>

#include "inbench/errors.hpp"

namespace inbench {

CrossSection CrossSection::from_polygon(Polygon p) {
    CrossSection cs;
    cs.vertices = std::move(p);
    cs.kind = is_convex(cs.vertices) ? ShapeKind::convex : ShapeKind::nonconvex;
    return cs;
}

static void validate_section(const CrossSection& cs, const char* name) {
    if (cs.vertices.size() < 3) throw ConfigError(std::string(name) + ": needs >= 3 vertices");
    if (!is_simple(cs.vertices)) throw ConfigError(std::string(name) + ": self-intersecting polygon");
    if (!is_ccw(cs.vertices)) throw ConfigError(std::string(name) + ": vertices must be CCW");
    if (std::abs(signed_area(cs.vertices)) < 1e-12)
        throw ConfigError(std::string(name) + ": zero-area polygon");
}

void TaskSpec::validate() const {
    validate_section(peg, "peg");
    validate_section(hole, "hole");
    if (clearance <= 0.0) throw ConfigError("clearance must be > 0");
    if (peg_height <= 0.0) throw ConfigError("peg_height must be > 0");
    if (friction_mu < 0.0) throw ConfigError("friction_mu must be >= 0");
    if (task_id.empty()) throw ConfigError("task_id must be non-empty");

    const Polygon& inner = mode == TaskMode::insertion ? peg.vertices : peg.vertices;
    const Polygon& outer = mode == TaskMode::insertion ? hole.vertices : hole.vertices;
    (void)inner;
    (void)outer;
    const double margin = offset_margin(*this, {0.0, 0.0}, 0.0);
    if (margin <= 0.0) throw ConfigError("hole does not contain peg at zero offset");
    if (std::abs(margin - clearance) > 1e-6)
        throw ConfigError("hole/peg margin at zero offset does not realize the stated clearance");
}

void BoardLayout::validate() const {
    if (occupied.size() != sockets.size()) throw ConfigError("occupied size != socket count");
    for (const auto& s : sockets) s.task.validate();
    // pairwise footprint separation: bounding radii must not overlap
    for (size_t i = 0; i < sockets.size(); ++i) {
        for (size_t j = i + 1; j < sockets.size(); ++j) {
            auto radius = [](const Socket& s) {
                double r = 0.0;
                for (const Vec2& v : s.task.hole.vertices) r = std::max(r, v.norm());
                for (const Vec2& v : s.task.peg.vertices) r = std::max(r, v.norm());
                return r;
            };
            const double dx = sockets[i].offset.x - sockets[j].offset.x;
            const double dy = sockets[i].offset.y - sockets[j].offset.y;
            if (std::hypot(dx, dy) < radius(sockets[i]) + radius(sockets[j]))
                throw ConfigError("socket footprints overlap");
        }
    }
}

BoardLayout BoardLayout::single(const TaskSpec& task) {
    BoardLayout b;
    b.sockets.push_back({task, Pose6{}});
    b.occupied.push_back(false);
    return b;
}

Pose6 socket_world_pose(const BoardLayout& board, size_t index) {
    return compose(board.board_pose, board.sockets.at(index).offset);
}

TaskSpec effective_task(const BoardLayout& board, size_t index) {
    TaskSpec t = board.sockets.at(index).task;
    t.goal_pose = compose(socket_world_pose(board, index), t.goal_pose);
    return t;
}

// Moving polygon (gripped part footprint) and static polygon (board-fixed)
// for the given mode. Containment always asks: moving stays inside static for
// insertion, static stays inside moving's opening for threading.
static void role_polygons(const TaskSpec& task, const Vec2& off, double theta_z,
                          Polygon& inner, Polygon& outer) {
    if (task.mode == TaskMode::insertion) {
        inner = transformed(task.peg.vertices, off, theta_z);
        outer = task.hole.vertices;
    } else {
        inner = task.peg.vertices; // shaft, board-fixed
        outer = transformed(task.hole.vertices, off, theta_z); // hoop opening, gripped
    }
}

bool contains_with_clearance(const TaskSpec& task, const Vec2& lateral_offset, double theta_z) {
    Polygon inner, outer;
    role_polygons(task, lateral_offset, theta_z, inner, outer);
    return polygon_inside(inner, outer);
}

bool contains_with_margin(const TaskSpec& task, const Vec2& lateral_offset, double theta_z,
                          double margin) {
    Polygon inner, outer;
    role_polygons(task, lateral_offset, theta_z, inner, outer);
    if (!polygon_inside(inner, outer)) return false;
    return boundary_distance(inner, outer) > margin;
}

double offset_margin(const TaskSpec& task, const Vec2& lateral_offset, double theta_z) {
    Polygon inner, outer;
    role_polygons(task, lateral_offset, theta_z, inner, outer);
    return containment_margin(inner, outer);
}

ContactPatch contact_patch(const TaskSpec& task, const Vec2& lateral_offset, double theta_z) {
    ContactPatch patch;
    const bool insertion = task.mode == TaskMode::insertion;
    // region = moving_footprint \ opening, computed as footprint minus
    // footprint∩opening in the board frame
    const Polygon footprint = insertion
        ? transformed(task.peg.vertices, lateral_offset, theta_z)
        : task.peg.vertices; // threading: shaft top is the resting surface
    const Polygon opening = insertion
        ? task.hole.vertices
        : transformed(task.hole.vertices, lateral_offset, theta_z);

    const AreaMoment full = area_moment(footprint);
    const AreaMoment overlap = intersection_moment(footprint, opening);
    const double area = full.area - overlap.area;
    if (area <= 1e-12) return patch;

    patch.area = area;
    const Vec2 moment{full.moment.x - overlap.moment.x, full.moment.y - overlap.moment.y};
    Vec2 centroid_board{moment.x / area, moment.y / area};
    // express relative to the gripped part's axis, in the EEF(yaw) frame
    const Vec2 rel = centroid_board - (insertion ? lateral_offset : lateral_offset);
    const double c = std::cos(theta_z), s = std::sin(theta_z);
    patch.centroid = {c * rel.x + s * rel.y, -s * rel.x + c * rel.y};
    return patch;
}

namespace {

Polygon regular_polygon(int sides, double apothem, double phase) {
    Polygon p;
    p.reserve(static_cast<size_t>(sides));
    const double r = apothem / std::cos(M_PI / sides);
    for (int i = 0; i < sides; ++i) {
        const double a = phase + 2.0 * M_PI * i / sides;
        p.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return p;
}

Polygon square_section(double side) {
    const double h = 0.5 * side;
    return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
}

// Two-prong plug footprint (non-convex), roughly 24 x 16 mm.
Polygon plug_section() {
    const double mm = 1e-3;
    return {{-12 * mm, -8 * mm}, {12 * mm, -8 * mm}, {12 * mm, 8 * mm},
            {4 * mm, 8 * mm},   {4 * mm, 2 * mm},  {-4 * mm, 2 * mm},
            {-4 * mm, 8 * mm},  {-12 * mm, 8 * mm}};
}

Polygon triangle_section(double side) {
    const double r = side / std::sqrt(3.0); // circumradius
    Polygon p;
    for (int i = 0; i < 3; ++i) {
        const double a = M_PI / 2.0 + 2.0 * M_PI * i / 3.0;
        p.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return p;
}

TaskSpec make_insertion(const std::string& id, Polygon peg, double clearance) {
    TaskSpec t;
    t.task_id = id;
    t.peg = CrossSection::from_polygon(peg);
    t.hole = CrossSection::from_polygon(offset_polygon(peg, clearance));
    t.clearance = clearance;
    t.mode = TaskMode::insertion;
    t.goal_pose = Pose6{0.0, 0.0, -6e-3, 0.0, 0.0, 0.0}; // 6 mm insertion depth
    return t;
}

TaskSpec make_threading(const std::string& id, Polygon shaft, double clearance) {
    TaskSpec t;
    t.task_id = id;
    t.peg = CrossSection::from_polygon(shaft); // board-fixed shaft
    t.hole = CrossSection::from_polygon(offset_polygon(shaft, clearance)); // hoop opening
    t.clearance = clearance;
    t.mode = TaskMode::threading;
    t.peg_height = 25e-3; // shaft height
    t.goal_pose = Pose6{0.0, 0.0, 0.0, 0.0, 0.0, 0.0}; // hoop seated on the board
    t.friction_mu = 0.6;
    t.peg_color = {0.72, 0.55, 0.34};
    t.socket_color = {0.55, 0.40, 0.22};
    return t;
}

} // namespace

TaskSpec builtin_task(const std::string& id) {
    const double mm = 1e-3;
    TaskSpec t;
    if (id == "square_1mm") t = make_insertion(id, square_section(20 * mm), 1.0 * mm);
    else if (id == "square_03mm") t = make_insertion(id, square_section(20 * mm), 0.3 * mm);
    else if (id == "circle_1mm") t = make_insertion(id, regular_polygon(24, 10 * mm, 0.0), 1.0 * mm);
    else if (id == "circle_03mm") t = make_insertion(id, regular_polygon(24, 10 * mm, 0.0), 0.3 * mm);
    else if (id == "triangle_1mm") t = make_insertion(id, triangle_section(24 * mm), 1.0 * mm);
    else if (id == "triangle_03mm") t = make_insertion(id, triangle_section(24 * mm), 0.3 * mm);
    else if (id == "plug_1mm") t = make_insertion(id, plug_section(), 1.0 * mm);
    else if (id == "plug_03mm") t = make_insertion(id, plug_section(), 0.3 * mm);
    else if (id == "thread_square_1mm") t = make_threading(id, square_section(15 * mm), 1.0 * mm);
    else if (id == "thread_triangle_1mm") t = make_threading(id, triangle_section(18 * mm), 1.0 * mm);
    else throw ConfigError("unknown builtin task id: " + id);
    t.validate();
    return t;
}

std::vector<std::string> builtin_task_ids() {
    return {"square_1mm",   "square_03mm",  "circle_1mm",   "circle_03mm",
            "triangle_1mm", "triangle_03mm", "plug_1mm",     "plug_03mm",
            "thread_square_1mm", "thread_triangle_1mm"};
}

} // namespace inbench
