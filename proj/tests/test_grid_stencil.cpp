#include <gtest/gtest.h>

#include "support.hpp"

using namespace seqexp;
using seqexp::testing::max_diff;
using seqexp::testing::randomize;

TEST(Grid, RejectsBadSizes) {
    EXPECT_THROW(Grid::make_2d(0, 4, 1.0, 1.0), ConfigError);
    EXPECT_THROW(Grid::make_2d(4, 4, -1.0, 1.0), ConfigError);
}

TEST(FillGhosts, ConstantPeriodicUnchanged) {
    const Grid g = Grid::make_2d(5, 3, 1.0, 1.0);
    Field f(g, Layout::cell, 2.5);
    fill_ghosts(f, g);
    for (double v : f.data()) EXPECT_EQ(v, 2.5);
}

TEST(FillGhosts, PeriodicWrap) {
    const Grid g = Grid::make_2d(4, 2, 1.0, 1.0);
    Field f(g, Layout::cell);
    f.for_interior([&](int i, int j, int) { f(i, j) = i; });
    fill_ghosts(f, g);
    EXPECT_EQ(f(-1, 0), 3.0);
    EXPECT_EQ(f(4, 0), 0.0);
    EXPECT_EQ(f(-1, -1), 3.0);  // corners come out of the second pass
}

TEST(FillGhosts, ReflectiveVelocity) {
    const Grid g = Grid::make_2d(3, 3, 1.0, 1.0, BoundaryKind::periodic, BoundaryKind::reflective);
    Field u(g, Layout::cell), v(g, Layout::cell);
    u.for_interior([&](int i, int j, int) { u(i, j) = 1 + i + 10 * j; });
    v.for_interior([&](int i, int j, int) { v(i, j) = 1 + i + 10 * j; });
    fill_ghosts(u, g);
    fill_ghosts(v, g, nullptr, {1.0, -1.0, 1.0});
    EXPECT_EQ(u(1, -1), u(1, 0));
    EXPECT_EQ(u(1, 3), u(1, 2));
    EXPECT_EQ(v(1, -1), -v(1, 0));
    EXPECT_EQ(v(1, 3), -v(1, 2));
}

TEST(FillGhosts, FrozenCopiesSnapshotAndNeedsOne) {
    const Grid g = Grid::make_2d(3, 3, 1.0, 1.0, BoundaryKind::frozen, BoundaryKind::frozen);
    Field snap(g, Layout::cell, 7.0), f(g, Layout::cell, 1.0);
    EXPECT_THROW(fill_ghosts(f, g), ConfigError);
    fill_ghosts(f, g, &snap);
    EXPECT_EQ(f(-1, 1), 7.0);
    EXPECT_EQ(f(1, 3), 7.0);
    EXPECT_EQ(f(1, 1), 1.0);
}

TEST(InitFrom, MidpointAndStaggering) {
    const Grid g = Grid::make_2d(2, 2, 1.0, 1.0);
    const Field c = init_from([](double x, double) { return x; }, g, Layout::cell);
    EXPECT_DOUBLE_EQ(c(0, 0), 0.25);
    EXPECT_DOUBLE_EQ(c(1, 0), 0.75);
    const Field k = init_from([](double, double) { return 3.0; }, g, Layout::cell);
    for (double v : k.data()) EXPECT_EQ(v, 3.0);
    const Field nx = init_from([](double x, double) { return x; }, g, Layout::node);
    const Field ny = init_from([](double, double y) { return y; }, g, Layout::node);
    EXPECT_DOUBLE_EQ(nx(0, 0) - c(0, 0), 0.25);
    EXPECT_DOUBLE_EQ(ny(0, 0), 0.5);
    // an x-directed edge sits half a cell up in y
    const Field ex = init_from([](double x, double y) { return x + 10 * y; }, g, Layout::edge_x);
    EXPECT_DOUBLE_EQ(ex(0, 0), 0.25 + 5.0);
}

TEST(InitFrom, ThreeDimensional) {
    const Grid g = Grid::make_3d(2, 2, 2, 1.0, 1.0, 1.0);
    const Field f = init_from([](double, double, double z) { return z; }, g, Layout::cell);
    EXPECT_DOUBLE_EQ(f(0, 0, 1), 0.75);
}

namespace {

Field ramp_x(const Grid& g) {
    Field f(g, Layout::cell);
    for (int j = -1; j <= g.ny; ++j)
        for (int i = -1; i <= g.nx; ++i) f(i, j) = i;
    return f;
}

}  // namespace

TEST(Bracket, ConstantFieldGivesZeroJump) {
    const Grid g = Grid::make_2d(6, 6, 1.0, 1.0);
    Field f(g, Layout::cell, 3.0);
    for (BracketOp op : {BracketOp::jump_half, BracketOp::jump_wide, BracketOp::double_jump}) {
        const Field r = apply_bracket(BracketExpr{}.then(0, op).then(1, BracketOp::sum_half), f, g);
        EXPECT_EQ(r.interior_max_abs(), 0.0);
    }
}

TEST(Bracket, RampJumpIsOne) {
    const Grid g = Grid::make_2d(6, 4, 1.0, 1.0);
    const Field f = ramp_x(g);
    const Field r = apply_bracket(BracketExpr{}.then(0, BracketOp::jump_half), f, g);
    EXPECT_EQ(r.layout(), Layout::edge_y);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) EXPECT_EQ(r(i, j), 1.0);
}

TEST(Bracket, SumOfJumpsIsWideJump) {
    const Grid g = Grid::make_2d(16, 16, 1.0, 1.0);
    std::mt19937_64 rng(11);
    Field q(g, Layout::cell);
    randomize(q, rng);
    fill_ghosts(q, g);
    const Field a = apply_bracket(BracketExpr{}.then(0, BracketOp::jump_half).then(0, BracketOp::sum_half), q, g);
    const Field b = apply_bracket(BracketExpr{}.then(0, BracketOp::jump_wide), q, g);
    EXPECT_EQ(a.layout(), Layout::cell);
    EXPECT_LE(max_diff(a, b), 1e-15);
}

TEST(Bracket, FusedMatchesReference) {
    const Grid g = Grid::make_2d(12, 10, 1.0, 1.0);
    std::mt19937_64 rng(5);
    Field q(g, Layout::node);
    randomize(q, rng);
    fill_ghosts(q, g);
    const BracketExpr e =
        BracketExpr{}.then(0, BracketOp::jump_half).then(1, BracketOp::sum_half).then(1, BracketOp::double_sum).divide_by(8.0);
    EXPECT_THROW(apply_bracket_reference(e, q, g), StencilReachError);
    const BracketExpr e2 = BracketExpr{}.then(0, BracketOp::jump_half).then(1, BracketOp::sum_half).divide_by(2.0);
    const Field a = apply_bracket(e2, q, g), b = apply_bracket_reference(e2, q, g);
    EXPECT_EQ(a.layout(), b.layout());
    EXPECT_LE(max_diff(a, b), 1e-15);
}

TEST(Bracket, ReachBeyondGhostsThrows) {
    const Grid g = Grid::make_2d(6, 6, 1.0, 1.0);
    Field q(g, Layout::cell);
    const BracketExpr e = BracketExpr{}.then(0, BracketOp::double_jump).then(0, BracketOp::double_jump);
    EXPECT_THROW(apply_bracket(e, q, g), StencilReachError);
}

TEST(AvgPerp, Examples) {
    const Grid g = Grid::make_2d(8, 8, 1.0, 1.0);
    Field c(g, Layout::cell, 4.0);
    EXPECT_LE(max_diff(avg_perp(c, g, 1), c), 0.0);

    Field alt(g, Layout::cell);
    for (int j = -1; j <= g.ny; ++j)
        for (int i = -1; i <= g.nx; ++i) alt(i, j) = (j + 2) % 2 == 0 ? 1.0 : -1.0;
    EXPECT_LE(avg_perp(alt, g, 1).interior_max_abs(), 1e-15);

    std::mt19937_64 rng(3);
    Field q(g, Layout::cell);
    randomize(q, rng);
    fill_ghosts(q, g);
    Field ref = apply_bracket(BracketExpr{}.then(0, BracketOp::double_sum), q, g);
    ref.scale(0.25);
    EXPECT_LE(max_diff(avg_perp(q, g, 0), ref), 1e-15);
}
