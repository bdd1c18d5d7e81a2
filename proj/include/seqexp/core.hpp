#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>

namespace seqexp {

/// A two-equation system a' = f(b), b' = g(a).
///
/// The nonlinear maps are opaque callables. For the linear case the slopes
/// fp = f'(b) and gp = g'(a) are stored separately so spectral statements can
/// be checked without differentiating user code.
struct SeqExpSystem {
    std::function<double(double)> f;
    std::function<double(double)> g;
    double fp = 0.0;
    double gp = 0.0;

    static SeqExpSystem linear(double fp, double gp) {
        SeqExpSystem s;
        s.fp = fp;
        s.gp = gp;
        s.f = [fp](double b) { return fp * b; };
        s.g = [gp](double a) { return gp * a; };
        return s;
    }

    bool oscillatory() const { return fp * gp < 0.0; }
};

/// One sequential explicit step: a is advanced first and the b-update uses
/// the new a.
inline std::pair<double, double> step_seqexp(double a, double b, const SeqExpSystem& sys, double dt) {
    const double a_new = a + dt * sys.f(b);
    const double b_new = b + dt * sys.g(a_new);
    return {a_new, b_new};
}

using Mat2 = std::array<std::array<double, 2>, 2>;

inline Mat2 linear_amplification(double fp, double gp, double dt) {
    return {{{1.0, dt * fp}, {dt * gp, 1.0 + dt * dt * fp * gp}}};
}

/// Eigenvalues of a real 2x2 matrix by the quadratic formula.
inline std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4.0 - det, 0.0));
    return {tr / 2.0 + disc, tr / 2.0 - disc};
}

inline double spectral_radius(const Mat2& m) {
    const auto ev = eigenvalues(m);
    return std::max(std::abs(ev[0]), std::abs(ev[1]));
}

/// Largest stable step of the linear oscillator, 2 / sqrt(-fp gp).
inline double stability_bound(double fp, double gp) { return 2.0 / std::sqrt(-fp * gp); }

/// Energy that the linear sequential explicit step conserves exactly.
inline double discrete_hamiltonian(double a_n, double a_np1, double b_n, double fp, double gp) {
    return gp * a_n * a_np1 / 2.0 - fp * b_n * b_n / 2.0;
}

}  // namespace seqexp
