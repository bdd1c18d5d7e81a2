#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace seqexp;

namespace {

double smallest_singular_value(const Eigen::MatrixXcd& A) {
    const Eigen::MatrixXcd M = A - Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues().minCoeff();
}

}  // namespace

TEST(Schur, SimpleCases) {
    EXPECT_TRUE(schur_unit_disc(ComplexPolynomial({0.0, 0.0, 1.0})));  // z^2
    EXPECT_FALSE(schur_unit_disc(ComplexPolynomial({-2.0, 1.0})));     // z - 2
    EXPECT_TRUE(schur_unit_disc(ComplexPolynomial::from_roots({0.5, cplx(0.0, -0.9)})));
    EXPECT_FALSE(schur_unit_disc(ComplexPolynomial::from_roots({0.5, cplx(1.1, 0.0)})));
}

TEST(Schur, ExtendedSchemeQuadratic) {
    // Two-level recursion of the collocated extended scheme at beta = (pi, 0),
    // where the extended Laplacian has symbol -4 per unit ratio squared.
    for (double r : {0.5, 0.9, 0.999, 1.001, 1.2}) {
        const double s = -4.0;
        const double b = 2.0 + r * r * s;
        const ComplexPolynomial f({1.0, -b, 1.0});
        const auto rts = roots(f);
        const bool direct = std::max(std::abs(rts[0]), std::abs(rts[1])) <= 1.0 + 1e-9;
        EXPECT_EQ(schur_unit_disc(f, 1e-10), direct) << r;
        EXPECT_EQ(direct, r <= 1.0) << r;
    }
}

TEST(Schur, AgreesWithCompanionRoots) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-1.2, 1.2);
    std::uniform_int_distribution<int> deg(1, 6);
    int disagree = 0;
    for (int n = 0; n < 1000; ++n) {
        std::vector<cplx> c(deg(rng) + 1);
        for (auto& x : c) x = {d(rng), d(rng)};
        const ComplexPolynomial f(c);
        double rmax = 0.0;
        for (auto z : roots(f)) rmax = std::max(rmax, std::abs(z));
        if (schur_unit_disc(f) != (rmax <= 1.0) && std::abs(rmax - 1.0) > 1e-10) ++disagree;
    }
    EXPECT_EQ(disagree, 0);
}

TEST(Amplification, ZeroWavenumberIsIdentity) {
    for (const auto& in : kMaxwellSchemes) {
        const Eigen::MatrixXcd A = amplification_matrix(in.id, Wavenumber{}, 0.5);
        EXPECT_LE((A - Eigen::MatrixXcd::Identity(A.rows(), A.cols())).norm(), 1e-15) << in.name;
    }
    EXPECT_LE((euler_linearized_matrix(EulerBackground{0.3, -0.2, 1.0, 1.0}, 0.2, 1.0, {}) -
               Eigen::Matrix4cd::Identity())
                  .norm(),
              1e-14);
}

TEST(Amplification, OneIsAlwaysAnEigenvalue) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> d(-M_PI, M_PI);
    for (auto id : seqexp::testing::kSequential2D)
        for (int n = 0; n < 200; ++n) {
            const Wavenumber b{d(rng), d(rng), 0.0};
            EXPECT_LE(smallest_singular_value(amplification_matrix(id, b, 0.6)), 1e-12) << info(id).name;
        }
}

TEST(Amplification, YeeCornerMode) {
    const Wavenumber b{M_PI, M_PI, 0.0};
    EXPECT_LE(spectral_radius(amplification_matrix(MaxwellSchemeId::YeeOriginal, b, 0.70)), 1.0 + 1e-12);
    EXPECT_GT(spectral_radius(amplification_matrix(MaxwellSchemeId::YeeOriginal, b, 0.72)), 1.0 + 1e-6);
}

TEST(Amplification, RadiusEstimatorsAgree) {
    const Wavenumber b{0.7, -1.9, 0.0};
    for (auto id : {MaxwellSchemeId::Central, MaxwellSchemeId::UpwindSplit}) {
        const Eigen::MatrixXcd A = amplification_matrix(id, b, 0.4);
        EXPECT_NEAR(spectral_radius(A), spectral_radius_charpoly(A), 1e-8);
        EXPECT_NEAR(spectral_radius(A), spectral_radius_power(A), 1e-3);  // slow on unit-modulus pairs
    }
}

TEST(CflMax, TableValues) {
    EXPECT_NEAR(cfl_max(MaxwellSchemeId::YeeOriginal, 64), 1.0 / std::sqrt(2.0), 0.005);
    EXPECT_NEAR(cfl_max(MaxwellSchemeId::YeeExtendedStaggered, 64), 1.0, 0.005);
    EXPECT_NEAR(cfl_max(MaxwellSchemeId::CentralExtended, 64), 2.0, 0.01);
    EXPECT_NEAR(cfl_max(MaxwellSchemeId::YeeExtended3D, 16), 1.0, 0.01);
    EXPECT_NEAR(cfl_max(AcousticSchemeId::CentralExtended, 64), 2.0, 0.01);
}

TEST(EulerLinearized, PureAdvectionRoots) {
    EulerBackground q;
    q.u = 0.6;
    q.v = -0.3;
    q.p = 0.0;
    const double dt = 0.5;
    for (const Wavenumber b : {Wavenumber{0.4, 1.3, 0.0}, Wavenumber{-2.0, 0.9, 0.0}, Wavenumber{M_PI, -M_PI, 0.0}}) {
        const Eigen::Matrix4cd A = euler_linearized_matrix(q, dt, 1.0, b, 0.0, EulerTimeStructure::forward_euler);
        const cplx z0 = euler_advective_root(q.u, q.v, dt, 1.0, b);
        const Eigen::Vector4cd ev = A.eigenvalues();
        for (int k = 0; k < 4; ++k) EXPECT_LE(std::abs(ev[k] - z0), 1e-3);  // a fourfold root is ill-conditioned
        const ComplexPolynomial f = characteristic_polynomial(A);
        const ComplexPolynomial expect = ComplexPolynomial::from_roots({z0, z0, z0, z0});
        for (int k = 0; k <= 4; ++k) EXPECT_LE(std::abs(f.c[k] - expect.c[k]), 1e-10);
    }
}

TEST(EulerLinearized, ZeroVelocityHasDoubleUnitEigenvalue) {
    EulerBackground q;
    for (const Wavenumber b : {Wavenumber{0.4, 1.3, 0.0}, Wavenumber{2.5, -0.7, 0.0}}) {
        const Eigen::Matrix4cd M = euler_linearized_matrix(q, 0.5, 1.0, b) - Eigen::Matrix4cd::Identity();
        const auto sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(M).singularValues();
        EXPECT_LE(sv[3], 1e-10);
        EXPECT_LE(sv[2], 1e-10);
    }
}

TEST(EulerLinearized, MaxDtAtRest) {
    EulerBackground q;
    q.p = 1.0 / 1.4;  // c = 1
    EulerMapOptions opt;
    opt.beta_step = 0.1;
    const double r = euler_max_dt(q, opt);
    EXPECT_NEAR(r, std::sqrt(0.7), 0.05 * std::sqrt(0.7));
    EXPECT_NEAR(euler_advective_max_dt(0.5, 0.25, opt), 1.0 / 0.75, 0.05 / 0.75);
}

TEST(EulerLinearized, MatchesJacobianOfNonlinearStep) {
    // Perturb a uniform periodic state along one Fourier mode, take a central
    // difference of the real step and compare the mode's coefficients.
    const int n = 16;
    const Grid g = Grid::make_2d(n, n, n, n);
    const double dt = 0.3, eps = 1e-6;
    const Wavenumber b{2.0 * M_PI * 3 / n, 2.0 * M_PI * 2 / n};
    const Eigen::Vector4cd a(cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.1, -0.3), cplx(0.5, 0.2));
    for (const EulerBackground q : {EulerBackground{0.3, -0.2, 1.0, 1.0}, EulerBackground{-0.5, 0.7, 0.8, 1.3}}) {
        const Vec4 q0 = prim_to_cons(q.rho, q.u, q.v, q.p, q.gamma);
        auto stepped = [&](double s) {
            ConservedState st = ConservedState::zeros(g);
            st.rho.for_interior([&](int i, int j, int) {
                const cplx ph = std::polar(1.0, b.x * i + b.y * j);
                for (int k = 0; k < 4; ++k) st[k](i, j) = q0[k] + s * std::real(a[k] * ph);
            });
            return step_euler(st, g, dt);
        };
        const ConservedState plus = stepped(eps), minus = stepped(-eps);
        Eigen::Vector4cd out = Eigen::Vector4cd::Zero();
        for (int k = 0; k < 4; ++k)
            plus[k].for_interior([&](int i, int j, int) {
                out[k] += (plus[k](i, j) - minus[k](i, j)) / (2.0 * eps) * std::polar(1.0, -(b.x * i + b.y * j));
            });
        out /= double(n * n);
        const Eigen::Vector4cd expect = euler_linearized_matrix(q, dt, 1.0, b) * (0.5 * a);
        EXPECT_LE((out - expect).norm(), 1e-7 * expect.norm()) << q.u << ", " << q.v;
    }
}
