#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "inbench/errors.hpp"
#include "inbench/localize.hpp"

using namespace inbench;

namespace {

const double kMm = 1e-3;
const double kDeg = M_PI / 180.0;

BoardLayout demo_board() {
    BoardLayout b;
    b.board_pose = Pose6{0.40, 0.10, 0.0, 0.0, 0.0, 0.0};
    b.sockets.push_back({builtin_task("square_1mm"), Pose6{-45 * kMm, 0, 0, 0, 0, 0}});
    b.sockets.push_back({builtin_task("circle_1mm"), Pose6{0, 10 * kMm, 0, 0, 0, 0}});
    b.sockets.push_back({builtin_task("triangle_1mm"), Pose6{45 * kMm, -5 * kMm, 0, 0, 0, 0.3}});
    b.occupied = {false, false, false};
    return b;
}

Pose6 register_eef(const BoardLayout& b) {
    Pose6 e = b.board_pose;
    e.z += 0.15;
    return e;
}

} // namespace

TEST_CASE("registered deltas compose back to the socket poses exactly") {
    const BoardLayout board = demo_board();
    const Pose6 eef = register_eef(board);
    const ReferenceRecord rec = register_reference(board, CameraModel::overhead(), eef);
    REQUIRE(rec.hole_deltas.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        const Pose6 truth = socket_world_pose(board, i);
        const Pose6 est = compose(rec.reference_eef, rec.hole_deltas[i].second);
        CHECK(std::abs(est.x - truth.x) < 1e-12);
        CHECK(std::abs(est.y - truth.y) < 1e-12);
        CHECK(std::abs(wrap_angle(est.theta_z - truth.theta_z)) < 1e-12);
    }
}

TEST_CASE("re-registration from the same state is identical") {
    const BoardLayout board = demo_board();
    const Pose6 eef = register_eef(board);
    const ReferenceRecord a = register_reference(board, CameraModel::overhead(), eef);
    const ReferenceRecord b = register_reference(board, CameraModel::overhead(), eef);
    CHECK(a.reference_image.data == b.reference_image.data);
    CHECK(a.hole_deltas.size() == b.hole_deltas.size());
}

TEST_CASE("reference record round-trips through its file") {
    const BoardLayout board = demo_board();
    const ReferenceRecord rec =
        register_reference(board, CameraModel::overhead(), register_eef(board));
    write_reference(rec, "ref_rt.bin");
    const ReferenceRecord back = read_reference("ref_rt.bin");
    CHECK(back.reference_image.data == rec.reference_image.data);
    REQUIRE(back.hole_deltas.size() == rec.hole_deltas.size());
    CHECK(back.hole_deltas[0].first == rec.hole_deltas[0].first);

    write_reference(back, "ref_rt2.bin");
    std::ifstream f1("ref_rt.bin", std::ios::binary), f2("ref_rt2.bin", std::ios::binary);
    std::string b1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string b2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(b1 == b2);
    std::remove("ref_rt.bin");
    std::remove("ref_rt2.bin");
}

TEST_CASE("ncc is 1 for identical images and below 1 for different ones") {
    const BoardLayout board = demo_board();
    const Pose6 eef = register_eef(board);
    const ImageTensor a = render_board(CameraModel::overhead(), board, eef);
    CHECK(normalized_cross_correlation(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    Pose6 moved = eef;
    moved.x += 5 * kMm;
    const ImageTensor b = render_board(CameraModel::overhead(), board, moved);
    CHECK(normalized_cross_correlation(a, b) < 1.0);
}

TEST_CASE("zero board offset converges in one iteration with exact hole poses") {
    const BoardLayout board = demo_board();
    const Pose6 eef = register_eef(board);
    const ReferenceRecord rec = register_reference(board, CameraModel::overhead(), eef);
    const LocalizerConfig cfg;
    const LocalizeResult res = localize(rec, board, CameraModel::overhead(), eef, cfg);
    CHECK(res.iterations == 1);
    for (size_t i = 0; i < board.sockets.size(); ++i) {
        const Pose6 truth = socket_world_pose(board, i);
        CHECK(std::abs(res.hole_poses[i].second.x - truth.x) < 1e-9);
        CHECK(std::abs(res.hole_poses[i].second.y - truth.y) < 1e-9);
    }
}

TEST_CASE("(5, -3, 5deg) offset is recovered within 1mm and 1deg") {
    const BoardLayout nominal = demo_board();
    const Pose6 eef = register_eef(nominal);
    const ReferenceRecord rec = register_reference(nominal, CameraModel::overhead(), eef);

    BoardLayout placed = nominal;
    placed.board_pose = compose(nominal.board_pose, Pose6{5 * kMm, -3 * kMm, 0, 0, 0, 5 * kDeg});
    const LocalizerConfig cfg;
    const LocalizeResult res = localize(rec, placed, CameraModel::overhead(), eef, cfg);
    for (size_t i = 0; i < placed.sockets.size(); ++i) {
        const Pose6 truth = socket_world_pose(placed, i);
        const Pose6& est = res.hole_poses[i].second;
        CHECK(std::abs(est.x - truth.x) < 1.0 * kMm);
        CHECK(std::abs(est.y - truth.y) < 1.0 * kMm);
        CHECK(std::abs(wrap_angle(est.theta_z - truth.theta_z)) < 1.0 * kDeg);
    }
}

TEST_CASE("offsets outside the search range raise LocalizationFailed") {
    const BoardLayout nominal = demo_board();
    const Pose6 eef = register_eef(nominal);
    const ReferenceRecord rec = register_reference(nominal, CameraModel::overhead(), eef);
    BoardLayout placed = nominal;
    placed.board_pose = compose(nominal.board_pose, Pose6{50 * kMm, 0, 0, 0, 0, 0});
    LocalizerConfig cfg;
    cfg.max_iters = 3;
    CHECK_THROWS_AS(localize(rec, placed, CameraModel::overhead(), eef, cfg), LocalizationFailed);
}

TEST_CASE("moving by the estimate never lowers the correlation below the start") {
    const BoardLayout nominal = demo_board();
    const Pose6 eef = register_eef(nominal);
    const ReferenceRecord rec = register_reference(nominal, CameraModel::overhead(), eef);
    Rng rng(31);
    for (int i = 0; i < 5; ++i) {
        BoardLayout placed = nominal;
        placed.board_pose = compose(
            nominal.board_pose, Pose6{rng.uniform(-15, 15) * kMm, rng.uniform(-15, 15) * kMm, 0,
                                      0, 0, rng.uniform(-12, 12) * kDeg});
        const double before = normalized_cross_correlation(
            render_board(CameraModel::overhead(), placed, eef), rec.reference_image);
        const LocalizerConfig cfg;
        const LocalizeResult res = localize(rec, placed, CameraModel::overhead(), eef, cfg);
        CHECK(res.correlation >= before); // the search includes the null move
    }
}

TEST_CASE("20 random in-range offsets are recovered within 1mm and 1deg") {
    const BoardLayout nominal = demo_board();
    const Pose6 eef = register_eef(nominal);
    const ReferenceRecord rec = register_reference(nominal, CameraModel::overhead(), eef);
    Rng rng(32);
    const LocalizerConfig cfg;
    for (int i = 0; i < 20; ++i) {
        BoardLayout placed = nominal;
        placed.board_pose =
            compose(nominal.board_pose,
                    Pose6{rng.uniform(-0.9, 0.9) * cfg.range_xy,
                          rng.uniform(-0.9, 0.9) * cfg.range_xy, 0, 0, 0,
                          rng.uniform(-0.9, 0.9) * cfg.range_yaw});
        const LocalizeResult res = localize(rec, placed, CameraModel::overhead(), eef, cfg);
        for (size_t s = 0; s < placed.sockets.size(); ++s) {
            const Pose6 truth = socket_world_pose(placed, s);
            const Pose6& est = res.hole_poses[s].second;
            CHECK(std::abs(est.x - truth.x) <= 1.0 * kMm);
            CHECK(std::abs(est.y - truth.y) <= 1.0 * kMm);
            CHECK(std::abs(wrap_angle(est.theta_z - truth.theta_z)) <= 1.0 * kDeg);
        }
    }
}
