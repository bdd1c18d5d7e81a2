#include <gtest/gtest.h>

#include <random>

#include "seqexp/core.hpp"

using namespace seqexp;

TEST(StepSeqExp, ZeroStepIsIdentity) {
    auto sys = SeqExpSystem::linear(1.0, 1.0);
    auto [a, b] = step_seqexp(1.0, 0.0, sys, 0.0);
    EXPECT_EQ(a, 1.0);
    EXPECT_EQ(b, 0.0);
}

TEST(StepSeqExp, HandEvaluatedSteps) {
    auto sys = SeqExpSystem::linear(-1.0, 1.0);
    auto [a1, b1] = step_seqexp(1.0, 0.0, sys, 0.5);
    EXPECT_DOUBLE_EQ(a1, 1.0);
    EXPECT_DOUBLE_EQ(b1, 0.5);
    auto [a2, b2] = step_seqexp(0.0, 1.0, sys, 1.0);
    EXPECT_DOUBLE_EQ(a2, -1.0);
    EXPECT_DOUBLE_EQ(b2, 0.0);
}

TEST(StepSeqExp, NonlinearMapsAreCalled) {
    SeqExpSystem sys;
    sys.f = [](double b) { return std::sin(b); };
    sys.g = [](double a) { return -a * a; };
    auto [a, b] = step_seqexp(0.5, 1.0, sys, 0.1);
    EXPECT_DOUBLE_EQ(a, 0.5 + 0.1 * std::sin(1.0));
    EXPECT_DOUBLE_EQ(b, 1.0 - 0.1 * a * a);
}

TEST(LinearAmplification, Examples) {
    const Mat2 id = linear_amplification(0.0, 0.0, 3.0);
    EXPECT_EQ(id[0][0], 1.0);
    EXPECT_EQ(id[0][1], 0.0);
    EXPECT_EQ(id[1][0], 0.0);
    EXPECT_EQ(id[1][1], 1.0);

    const Mat2 m = linear_amplification(-1.0, 1.0, 1.0);
    EXPECT_EQ(m[0][0], 1.0);
    EXPECT_EQ(m[0][1], -1.0);
    EXPECT_EQ(m[1][0], 1.0);
    EXPECT_EQ(m[1][1], 0.0);
    for (auto z : eigenvalues(m)) EXPECT_NEAR(std::abs(z), 1.0, 1e-14);
}

TEST(LinearAmplification, MatchesStep) {
    auto sys = SeqExpSystem::linear(-2.0, 0.7);
    const Mat2 m = linear_amplification(-2.0, 0.7, 0.3);
    auto [a, b] = step_seqexp(0.4, -1.1, sys, 0.3);
    EXPECT_NEAR(a, m[0][0] * 0.4 + m[0][1] * -1.1, 1e-15);
    EXPECT_NEAR(b, m[1][0] * 0.4 + m[1][1] * -1.1, 1e-15);
}

TEST(LinearAmplification, UnitModulusBelowBoundAndGrowthAbove) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(0.1, 10.0), frac(0.01, 0.99);
    for (int n = 0; n < 100; ++n) {
        const double fp = -mag(rng), gp = mag(rng);
        const double bound = stability_bound(fp, gp);
        for (auto z : eigenvalues(linear_amplification(fp, gp, frac(rng) * bound)))
            EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
        EXPECT_GT(spectral_radius(linear_amplification(fp, gp, 1.01 * bound)), 1.0);
    }
}

TEST(DiscreteHamiltonian, Examples) {
    EXPECT_EQ(discrete_hamiltonian(0.0, 0.0, 0.0, -1.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(discrete_hamiltonian(1.0, 1.0, 1.0, -1.0, 1.0), 1.0);
}

TEST(DiscreteHamiltonian, ConstantAlongTrajectory) {
    const double fp = -1.0, gp = 1.0, dt = 0.5;
    auto sys = SeqExpSystem::linear(fp, gp);
    // the energy pairs a^{n} a^{n+1} with b^{n}, so it is read before each step
    double a = 1.0, b = 0.3;
    auto energy = [&](double an, double bn) {
        auto [an1, bn1] = step_seqexp(an, bn, sys, dt);
        (void)bn1;
        return discrete_hamiltonian(an, an1, bn, fp, gp);
    };
    const double h0 = energy(a, b);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        std::tie(a, b) = step_seqexp(a, b, sys, dt);
        worst = std::max(worst, std::abs(energy(a, b) - h0));
    }
    EXPECT_LE(worst, 1e-13);
}
