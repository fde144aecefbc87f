#include <doctest.h>

#include <cmath>

#include "inbench/errors.hpp"
#include "inbench/rng.hpp"
#include "inbench/task.hpp"

using namespace inbench;

namespace {

const double kMm = 1e-3;

Vec3 random_point(Rng& rng) {
    return {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
}

Pose6 random_pose(Rng& rng) {
    Pose6 p;
    p.x = rng.uniform(-0.5, 0.5);
    p.y = rng.uniform(-0.5, 0.5);
    p.z = rng.uniform(-0.5, 0.5);
    p.theta_x = rng.uniform(-3.0, 3.0);
    p.theta_y = rng.uniform(-1.5, 1.5);
    p.theta_z = rng.uniform(-3.0, 3.0);
    p.normalize_angles();
    return p;
}

// Test-only Monte-Carlo estimate of the contact patch (area of peg outside
// the hole and its centroid), independent of the clipping implementation.
struct McPatch {
    double area;
    Vec2 centroid;
};

McPatch mc_patch(const TaskSpec& task, const Vec2& offset, double theta_z, int n) {
    const Polygon peg = transformed(task.peg.vertices, offset, theta_z);
    double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
    for (const Vec2& v : peg) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    Rng rng(99);
    int in_peg = 0, in_patch = 0;
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 p{rng.uniform(min_x, max_x), rng.uniform(min_y, max_y)};
        if (!point_in_polygon(p, peg)) continue;
        ++in_peg;
        if (!point_in_polygon(p, task.hole.vertices)) {
            ++in_patch;
            sx += p.x;
            sy += p.y;
        }
    }
    McPatch out{};
    const double box = (max_x - min_x) * (max_y - min_y);
    out.area = box * static_cast<double>(in_patch) / n;
    (void)in_peg;
    if (in_patch > 0) {
        // centroid in the hole frame; convert to the EEF frame like the
        // implementation does
        const double cx = sx / in_patch - offset.x;
        const double cy = sy / in_patch - offset.y;
        const double c = std::cos(theta_z), s = std::sin(theta_z);
        out.centroid = {c * cx + s * cy, -s * cx + c * cy};
    }
    return out;
}

} // namespace

TEST_CASE("transform_to_eef maps the eef position to the origin") {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const Pose6 pose = random_pose(rng);
        const Vec3 p = transform_to_eef(pose.position(), pose);
        CHECK(std::abs(p.x) < 1e-12);
        CHECK(std::abs(p.y) < 1e-12);
        CHECK(std::abs(p.z) < 1e-12);
    }
}

TEST_CASE("identity pose leaves points unchanged") {
    const Vec3 p{0.1, -0.2, 0.3};
    const Vec3 q = transform_to_eef(p, Pose6{});
    CHECK(q.x == doctest::Approx(p.x).epsilon(1e-15));
    CHECK(q.y == doctest::Approx(p.y).epsilon(1e-15));
    CHECK(q.z == doctest::Approx(p.z).epsilon(1e-15));
}

TEST_CASE("frame transforms round-trip to 1e-12 on 100 random points") {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const Pose6 pose = random_pose(rng);
        const Vec3 p = random_point(rng);
        const Vec3 back = transform_to_world(transform_to_eef(p, pose), pose);
        CHECK(std::abs(back.x - p.x) < 1e-12);
        CHECK(std::abs(back.y - p.y) < 1e-12);
        CHECK(std::abs(back.z - p.z) < 1e-12);
    }
}

TEST_CASE("rigid transforms preserve distances to 1e-12") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const Pose6 pose = random_pose(rng);
        const Vec3 a = random_point(rng);
        const Vec3 b = random_point(rng);
        const double d0 = (a - b).norm();
        const double d1 = (transform_to_eef(a, pose) - transform_to_eef(b, pose)).norm();
        CHECK(std::abs(d0 - d1) < 1e-12);
    }
}

TEST_CASE("zyx angle extraction inverts composition") {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const double roll = rng.uniform(-1.4, 1.4);
        const double pitch = rng.uniform(-1.4, 1.4);
        const double yaw = rng.uniform(-3.0, 3.0);
        const auto angles = Quat::from_zyx(roll, pitch, yaw).to_zyx();
        CHECK(angles[0] == doctest::Approx(roll).epsilon(1e-9));
        CHECK(angles[1] == doctest::Approx(pitch).epsilon(1e-9));
        CHECK(angles[2] == doctest::Approx(yaw).epsilon(1e-9));
    }
}

TEST_CASE("corrective label composes back onto the goal") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Pose6 current = random_pose(rng);
        Pose6 goal = current;
        goal.x += rng.uniform(-0.01, 0.01);
        goal.y += rng.uniform(-0.01, 0.01);
        goal.theta_x = wrap_angle(goal.theta_x + rng.uniform(-0.17, 0.17));
        goal.theta_y = wrap_angle(goal.theta_y + rng.uniform(-0.17, 0.17));
        goal.theta_z = wrap_angle(goal.theta_z + rng.uniform(-0.17, 0.17));
        const CorrectiveAction d = corrective_label(current, goal);
        const Pose6 applied = apply_correction(current, d);
        CHECK(std::abs(applied.x - goal.x) < 1e-9);
        CHECK(std::abs(applied.y - goal.y) < 1e-9);
        CHECK(std::abs(wrap_angle(applied.theta_x - goal.theta_x)) < 1e-9);
        CHECK(std::abs(wrap_angle(applied.theta_y - goal.theta_y)) < 1e-9);
        CHECK(std::abs(wrap_angle(applied.theta_z - goal.theta_z)) < 1e-9);
    }
}

TEST_CASE("containment: square peg, 1mm clearance") {
    const TaskSpec task = builtin_task("square_1mm");

    CHECK(contains_with_clearance(task, {0.0, 0.0}, 0.0));
    CHECK_FALSE(contains_with_clearance(task, {1.5 * kMm, 0.0}, 0.0));
    // 20mm square rotated 45 deg has a 28.3mm diagonal; the hole is 22mm wide
    CHECK_FALSE(contains_with_clearance(task, {0.0, 0.0}, M_PI / 4.0));
}

TEST_CASE("containment is monotone in clearance") {
    const Polygon peg = builtin_task("square_1mm").peg.vertices;
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const Vec2 off{rng.uniform(-2e-3, 2e-3), rng.uniform(-2e-3, 2e-3)};
        const double yaw = rng.uniform(-0.2, 0.2);
        TaskSpec small, big;
        small.task_id = big.task_id = "t";
        small.peg = big.peg = CrossSection::from_polygon(peg);
        small.clearance = 1.0 * kMm;
        big.clearance = 1.6 * kMm;
        small.hole = CrossSection::from_polygon(offset_polygon(peg, small.clearance));
        big.hole = CrossSection::from_polygon(offset_polygon(peg, big.clearance));
        if (contains_with_clearance(small, off, yaw)) {
            CHECK(contains_with_clearance(big, off, yaw));
        }
    }
}

TEST_CASE("hole construction realizes the stated clearance") {
    for (const std::string& id : builtin_task_ids()) {
        const TaskSpec t = builtin_task(id);
        const double margin = offset_margin(t, {0.0, 0.0}, 0.0);
        CHECK(margin == doctest::Approx(t.clearance).epsilon(1e-6));
    }
}

TEST_CASE("contact patch: containment and disjoint cases") {
    const TaskSpec task = builtin_task("square_1mm");

    const ContactPatch aligned = contact_patch(task, {0.0, 0.0}, 0.0);
    CHECK(aligned.area == 0.0);

    const ContactPatch off = contact_patch(task, {30.0 * kMm, 0.0}, 0.0);
    CHECK(off.area == doctest::Approx(4e-4).epsilon(1e-9)); // full 20mm x 20mm peg
    CHECK(std::abs(off.centroid.x) < 1e-12);
    CHECK(std::abs(off.centroid.y) < 1e-12);
}

TEST_CASE("contact patch: 2mm offset square matches the Monte-Carlo oracle") {
    const TaskSpec task = builtin_task("square_1mm");
    const Vec2 offset{2.0 * kMm, 0.0};
    const ContactPatch patch = contact_patch(task, offset, 0.0);

    CHECK(patch.centroid.x > 0.0);
    CHECK(std::abs(patch.centroid.y) < 1e-9);

    const McPatch mc = mc_patch(task, offset, 0.0, 1000000);
    CHECK(std::abs(patch.area - mc.area) < 2e-6); // ~1% of the peg area
    CHECK(std::abs(patch.centroid.x - mc.centroid.x) < 1e-4);
    CHECK(std::abs(patch.centroid.y - mc.centroid.y) < 1e-4);
}

TEST_CASE("contact patch: non-convex plug against the MC oracle") {
    const TaskSpec task = builtin_task("plug_1mm");
    const Vec2 offset{3.0 * kMm, 2.0 * kMm};
    const double yaw = 0.12;
    const ContactPatch patch = contact_patch(task, offset, yaw);
    const McPatch mc = mc_patch(task, offset, yaw, 1000000);
    CHECK(std::abs(patch.area - mc.area) < 3e-6);
    CHECK(std::abs(patch.centroid.x - mc.centroid.x) < 2e-4);
    CHECK(std::abs(patch.centroid.y - mc.centroid.y) < 2e-4);
}

TEST_CASE("patch area vanishes exactly when contained") {
    const TaskSpec task = builtin_task("triangle_1mm");
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        const Vec2 off{rng.uniform(-4e-3, 4e-3), rng.uniform(-4e-3, 4e-3)};
        const double yaw = rng.uniform(-0.3, 0.3);
        const bool contained = contains_with_clearance(task, off, yaw);
        const ContactPatch patch = contact_patch(task, off, yaw);
        if (contained) {
            CHECK(patch.area == doctest::Approx(0.0).epsilon(1e-12));
        } else {
            CHECK(patch.area > 0.0);
        }
    }
}

TEST_CASE("patch centroid is on the offset side for x-symmetric shapes") {
    const TaskSpec task = builtin_task("square_1mm");
    for (double off : {1.5 * kMm, 2.5 * kMm, 4.0 * kMm}) {
        const ContactPatch p = contact_patch(task, {off, 0.0}, 0.0);
        CHECK(p.centroid.x > 0.0);
        CHECK(std::abs(p.centroid.y) < 1e-9);
        const ContactPatch n = contact_patch(task, {-off, 0.0}, 0.0);
        CHECK(n.centroid.x < 0.0);
    }
}

TEST_CASE("threading mode swaps containment roles") {
    const TaskSpec t = builtin_task("thread_square_1mm");
    CHECK(contains_with_clearance(t, {0.0, 0.0}, 0.0));
    CHECK_FALSE(contains_with_clearance(t, {1.5 * kMm, 0.0}, 0.0));
    const ContactPatch p = contact_patch(t, {3.0 * kMm, 0.0}, 0.0);
    CHECK(p.area > 0.0);
}

TEST_CASE("task validation rejects degenerate input") {
    TaskSpec t = builtin_task("square_1mm");
    t.peg.vertices.clear();
    CHECK_THROWS_AS(t.validate(), ConfigError);

    TaskSpec t2 = builtin_task("square_1mm");
    t2.clearance = -1.0;
    CHECK_THROWS_AS(t2.validate(), ConfigError);

    TaskSpec t3 = builtin_task("square_1mm");
    t3.hole = t3.peg; // no margin
    CHECK_THROWS_AS(t3.validate(), ConfigError);
}

TEST_CASE("board validation rejects overlapping sockets") {
    BoardLayout b;
    b.sockets.push_back({builtin_task("square_1mm"), Pose6{}});
    b.sockets.push_back({builtin_task("square_1mm"), Pose6{5e-3, 0, 0, 0, 0, 0}});
    b.occupied = {false, false};
    CHECK_THROWS_AS(b.validate(), ConfigError);
}

TEST_CASE("effective task rebases the goal to the board pose") {
    BoardLayout b = BoardLayout::single(builtin_task("square_1mm"));
    b.board_pose = Pose6{0.3, 0.2, 0.05, 0.0, 0.0, M_PI / 2.0};
    const TaskSpec t = effective_task(b, 0);
    CHECK(t.goal_pose.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(t.goal_pose.y == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(t.goal_pose.z == doctest::Approx(0.05 - 6.0 * kMm).epsilon(1e-9));
    CHECK(t.goal_pose.theta_z == doctest::Approx(M_PI / 2.0).epsilon(1e-9));
}
