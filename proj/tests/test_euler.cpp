#include <gtest/gtest.h>

#include "support.hpp"

using namespace seqexp;
using seqexp::testing::max_diff;

namespace {

ConservedState uniform(const Grid& g, double rho, double u, double v, double p) {
    ConservedState s = ConservedState::zeros(g);
    const Vec4 q = prim_to_cons(rho, u, v, p, s.gamma);
    for (int k = 0; k < 4; ++k) s[k] = Field(g, Layout::cell, q[k]);
    return s;
}

ConservedState random_state(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(0.5, 2.0), u(-0.5, 0.5), p(0.5, 2.0);
    ConservedState s = ConservedState::zeros(g);
    s.rho.for_interior([&](int i, int j, int) {
        const Vec4 q = prim_to_cons(r(rng), u(rng), u(rng), p(rng), s.gamma);
        for (int k = 0; k < 4; ++k) s[k](i, j) = q[k];
    });
    return s;
}

}  // namespace

TEST(Eos, EnergyExamples) {
    EXPECT_DOUBLE_EQ(prim_to_cons(1.0, 0.0, 0.0, 1.0, 1.4)[3], 2.5);
    EXPECT_DOUBLE_EQ(prim_to_cons(1.0, 1.0, 0.0, 1.0, 1.4)[3], 3.0);
    EXPECT_THROW(prim_to_cons(-1.0, 0.0, 0.0, 1.0, 1.4), PositivityError);
}

TEST(Eos, RoundTrip) {
    const Grid g = Grid::make_2d(40, 25, 1.0, 1.0);
    std::mt19937_64 rng(21);
    ConservedState s = random_state(g, rng);
    fill_ghosts(s, g);
    const PrimitiveState w = cons_to_prim(s);
    const ConservedState back = prim_to_cons(w);
    for (int k = 0; k < 4; ++k) {
        double rel = 0.0;
        s[k].for_interior([&](int i, int j, int) {
            rel = std::max(rel, std::abs(back[k](i, j) - s[k](i, j)) / std::max(1.0, std::abs(s[k](i, j))));
        });
        EXPECT_LE(rel, 1e-14) << k;
    }
}

TEST(PhysicalFlux, Examples) {
    const double g = 1.4;
    const Vec4 rest = prim_to_cons(1.0, 0.0, 0.0, 1.0, g);
    const Vec4 f = physical_flux(rest, 0, g);
    EXPECT_EQ(f[0], 0.0);
    EXPECT_DOUBLE_EQ(f[1], 1.0);
    EXPECT_EQ(f[2], 0.0);
    EXPECT_EQ(f[3], 0.0);

    // rho = 2, u = 3, v = -1, p = 5: E = 5/0.4 + 0.5*2*10 = 22.5
    const Vec4 q = prim_to_cons(2.0, 3.0, -1.0, 5.0, g);
    EXPECT_DOUBLE_EQ(q[3], 22.5);
    const Vec4 fx = physical_flux(q, 0, g), fy = physical_flux(q, 1, g);
    EXPECT_DOUBLE_EQ(fx[0], 6.0);
    EXPECT_DOUBLE_EQ(fx[1], 23.0);
    EXPECT_DOUBLE_EQ(fx[2], -6.0);
    EXPECT_DOUBLE_EQ(fx[3], 82.5);
    EXPECT_DOUBLE_EQ(fy[0], -2.0);
    EXPECT_DOUBLE_EQ(fy[1], -6.0);
    EXPECT_DOUBLE_EQ(fy[2], 7.0);
    EXPECT_DOUBLE_EQ(fy[3], -27.5);
}

TEST(ExtendedFlux, UniformStateGivesPhysicalFlux) {
    const Grid g = Grid::make_2d(6, 5, 1.0, 1.0);
    ConservedState s = uniform(g, 1.3, 0.4, -0.2, 0.9);
    fill_ghosts(s, g);
    const EdgeFluxes F = extended_fluxes(s, g, 0.01);
    const Vec4 q = s.at(0, 0);
    const Vec4 px = physical_flux(q, 0, s.gamma), py = physical_flux(q, 1, s.gamma);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(F.fx(3, 2)[k], px[k], 1e-15);
        EXPECT_NEAR(F.fy(3, 2)[k], py[k], 1e-15);
    }
    const auto r = rhs(s, g, 0.01);
    for (int k = 0; k < 4; ++k) EXPECT_LE(r[k].interior_max_abs(), 1e-14);
}

TEST(ExtendedFlux, OneDimensionalReduction) {
    const Grid g = Grid::make_2d(10, 4, 1.0, 0.4);
    const double u = 0.7, p = 1.2, dt = 0.03;
    ConservedState s = ConservedState::zeros(g);
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> d(0.5, 1.5);
    std::vector<double> rho(g.nx);
    for (auto& r : rho) r = d(rng);
    s.rho.for_interior([&](int i, int j, int) {
        const Vec4 q = prim_to_cons(rho[i], u, 0.0, p, s.gamma);
        for (int k = 0; k < 4; ++k) s[k](i, j) = q[k];
    });
    fill_ghosts(s, g);
    const EdgeFluxes F = extended_fluxes(s, g, dt);
    for (int i = 0; i + 1 < g.nx; ++i) {
        const Vec4 ql = s.at(i, 1), qr = s.at(i + 1, 1);
        const Vec4 fl = physical_flux(ql, 0, s.gamma), fr = physical_flux(qr, 0, s.gamma);
        for (int k = 0; k < 4; ++k) {
            const double expect = 0.5 * (fl[k] + fr[k]) - 0.5 * u * (qr[k] - ql[k]);
            EXPECT_NEAR(F.fx(i + 1, 1)[k], expect, 1e-14);
        }
    }
}

TEST(ExtendedFlux, DenominatorFollowsVelocityJump) {
    const Grid g = Grid::make_2d(4, 3, 1.0, 0.75);
    ConservedState s = uniform(g, 1.0, 0.0, 0.0, 1.0);
    // u jumps from 0 to 1 across the edge between cells 1 and 2, uniformly in y
    for (int j = -1; j <= g.ny; ++j)
        for (int i = 2; i <= g.nx; ++i) {
            const Vec4 q = prim_to_cons(1.0, 1.0, 0.0, 1.0, s.gamma);
            for (int k = 0; k < 4; ++k) s[k](i, j) = q[k];
        }
    const double dt = 0.05;
    const EdgeFluxes F = extended_fluxes(s, g, dt);
    const Vec4 ql = s.at(1, 1), qr = s.at(2, 1);
    const double den = 1.0 + dt * 1.0 / g.dx;
    const Vec4 fl = physical_flux(ql, 0, s.gamma), fr = physical_flux(qr, 0, s.gamma);
    EXPECT_NEAR(F.fx(2, 1)[0], (0.5 * (fl[0] + fr[0]) - 0.25 * (qr[0] - ql[0])) / den, 1e-14);
}

TEST(ExtendedFlux, PressureContributionIsConstantForSolenoidalVelocity) {
    // u = (y, -x) is in the kernel of the node divergence; with p constant
    // the pressure part of the momentum flux is the same on every edge.
    const Grid g = Grid::make_2d(8, 8, 1.0, 1.0, BoundaryKind::frozen, BoundaryKind::frozen);
    const double p = 2.0;
    ConservedState s = ConservedState::zeros(g);
    for (int j = -1; j <= g.ny; ++j)
        for (int i = -1; i <= g.nx; ++i) {
            const double x = coordinate(g, 0, i, 0), y = coordinate(g, 1, j, 0);
            const Vec4 q = prim_to_cons(1.0, y - 0.5, 0.5 - x, p, s.gamma);
            for (int k = 0; k < 4; ++k) s[k](i, j) = q[k];
        }
    const PrimitiveState w = cons_to_prim(s);
    EXPECT_LE(node_divergence(w, g).interior_max_abs(), 1e-14);

    // Zero-velocity copy isolates the pressure flux, which must equal p on every x-edge.
    ConservedState rest = uniform(g, 1.0, 0.0, 0.0, p);
    const EdgeFluxes F = extended_fluxes(rest, g, 0.01);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) EXPECT_NEAR(F.fx(i, j)[1], p, 1e-14);
    // With the solenoidal field the denominators are exactly one: the x-edge
    // momentum flux minus its advective part is p.
    const EdgeFluxes G = extended_fluxes(s, g, 0.01);
    const EdgeFluxes G0 = extended_fluxes(s, g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) EXPECT_NEAR(G.fx(i, j)[1], G0.fx(i, j)[1], 1e-13);
}

TEST(Rhs, TelescopesOnPeriodicGrid) {
    const Grid g = Grid::make_2d(24, 18, 1.0, 0.75);
    std::mt19937_64 rng(23);
    ConservedState s = random_state(g, rng);
    fill_ghosts(s, g);
    const auto r = rhs(s, g, 0.001);
    for (int k = 0; k < 4; ++k) EXPECT_LE(std::abs(r[k].interior_sum() * g.cell_volume()), 1e-12) << k;
}

TEST(Rhs, SodIsLocal) {
    const Grid g = case_grid(CaseKind::Sod, 100);
    ConservedState s = build_case({CaseKind::Sod}, g);
    const auto r = rhs(s, g, 1e-3);
    for (int i = 0; i < g.nx; ++i) {
        const bool near = i >= 48 && i <= 51;
        if (!near)
            for (int k = 0; k < 4; ++k) EXPECT_EQ(r[k](i, 0), 0.0) << i;
    }
    // the gas is at rest, so only the pressure jump drives the momentum
    EXPECT_NE(r[1](49, 0), 0.0);
    EXPECT_NE(r[1](50, 0), 0.0);
}

TEST(Step, UniformStateUnchangedAndMassConserved) {
    const Grid g = Grid::make_2d(12, 12, 1.0, 1.0);
    const ConservedState s = uniform(g, 1.0, 0.3, 0.1, 1.0);
    EXPECT_LE(max_diff(step_euler(s, g, 0.01).rho, s.rho), 1e-15);

    std::mt19937_64 rng(24);
    ConservedState r = random_state(g, rng);
    const Vec4 before = conserved_totals(r, g);
    integrate(r, g, 0.5, 0.02);
    const Vec4 after = conserved_totals(r, g);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(after[k], before[k], 1e-12) << k;
}

TEST(Step, ThreadCountDoesNotChangeResult) {
    const Grid g = Grid::make_2d(20, 16, 1.0, 1.0);
    std::mt19937_64 rng(25);
    const ConservedState s0 = random_state(g, rng);
    ConservedState a = s0, b = s0;
    integrate(a, g, 0.5, 0.02, {}, EulerOptions{0.1, 1});
    integrate(b, g, 0.5, 0.02, {}, EulerOptions{0.1, 3});
    for (int k = 0; k < 4; ++k) EXPECT_EQ(a[k].data(), b[k].data());
}

TEST(Step, CollapsingDenominatorThrows) {
    const Grid g = Grid::make_2d(8, 8, 1.0, 1.0);
    ConservedState s = uniform(g, 1.0, 0.0, 0.0, 1.0);
    s.rho.for_interior([&](int i, int j, int) {
        const Vec4 q = prim_to_cons(1.0, i < 4 ? 5.0 : -5.0, 0.0, 1.0, s.gamma);
        for (int k = 0; k < 4; ++k) s[k](i, j) = q[k];
    });
    EXPECT_THROW(step_euler(s, g, 0.2), CompressionCollapse);
}

TEST(ComputeDt, Examples) {
    const Grid g = Grid::make_2d(4, 4, 4.0, 4.0);  // dx = 1
    const double gamma = 1.4;
    const ConservedState rest = uniform(g, 1.0, 0.0, 0.0, 1.0 / gamma);  // c = 1
    EXPECT_NEAR(compute_dt(rest, g, 1.0), std::sqrt(gamma / 2.0), 1e-15);
    EXPECT_NEAR(std::sqrt(gamma / 2.0), 0.8367, 1e-4);

    const ConservedState fast = uniform(g, 1.0, 10.0, 0.0, 1e-12);
    EXPECT_NEAR(compute_dt(fast, g, 0.5), 0.5 / 10.0, 1e-6);

    // doubling velocity and sound speed halves dt
    const ConservedState a = uniform(g, 1.0, 0.3, -0.2, 1.0), b = uniform(g, 1.0, 0.6, -0.4, 4.0);
    EXPECT_NEAR(compute_dt(b, g, 0.9), 0.5 * compute_dt(a, g, 0.9), 1e-15);
    EXPECT_THROW(compute_dt(a, g, 0.0), ConfigError);
}

TEST(NodeDivergence, Annihilations) {
    const Grid g = Grid::make_2d(10, 10, 1.0, 1.0);
    Field u(g, Layout::cell, 0.4), v(g, Layout::cell, -1.2);
    EXPECT_LE(node_divergence(u, v, g).interior_max_abs(), 1e-15);
    const Field ur = init_from([](double, double y) { return y; }, g, Layout::cell);
    const Field vr = init_from([](double x, double) { return -x; }, g, Layout::cell);
    EXPECT_LE(node_divergence(ur, vr, g).interior_max_abs(), 1e-14);
    const Field ux = init_from([](double x, double) { return x; }, g, Layout::cell);
    EXPECT_NEAR(node_divergence(ux, Field(g, Layout::cell), g)(3, 3), 1.0, 1e-13);
}

TEST(PressureGradientNorm, ScalesWithMachSquared) {
    const Grid g = Grid::make_2d(10, 10, 1.0, 1.0);
    const Field p = init_from([](double x, double) { return 3.0 * x; }, g, Layout::cell);
    const double a = rescaled_pressure_gradient_norm(p, 1.0);
    EXPECT_NEAR(a, 3.0 * g.dx, 1e-13);
    EXPECT_NEAR(rescaled_pressure_gradient_norm(p, 0.1), 0.01 * a, 1e-15);
}
