#pragma once

#include <algorithm>
#include <cmath>

#include "seqexp/error.hpp"

namespace seqexp {

struct Primitive1D {
    double rho, u, p;
};

struct RiemannProblem {
    Primitive1D left, right;
    double gamma = 1.4;
};

/// Star-region values of the exact solution.
struct RiemannStar {
    double p, u;
    double rho_left, rho_right;  // densities left and right of the contact
};

namespace detail {

// Pressure function f_K(p) of one side and its derivative.
inline void side_function(double p, const Primitive1D& s, double gamma, double& f, double& df) {
    const double c = std::sqrt(gamma * s.p / s.rho);
    if (p > s.p) {
        const double A = 2.0 / ((gamma + 1.0) * s.rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
        const double q = std::sqrt(A / (p + B));
        f = (p - s.p) * q;
        df = q * (1.0 - 0.5 * (p - s.p) / (p + B));
    } else {
        const double e = (gamma - 1.0) / (2.0 * gamma);
        f = 2.0 * c / (gamma - 1.0) * (std::pow(p / s.p, e) - 1.0);
        df = std::pow(p / s.p, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c);
    }
}

inline double side_density(double p, const Primitive1D& s, double gamma) {
    if (p > s.p) {
        const double r = p / s.p, g = (gamma - 1.0) / (gamma + 1.0);
        return s.rho * (r + g) / (r * g + 1.0);
    }
    return s.rho * std::pow(p / s.p, 1.0 / gamma);
}

}  // namespace detail

/// Solves for the star state by Newton iteration on the pressure function,
/// to a relative tolerance of tol.
inline RiemannStar solve_star(const RiemannProblem& rp, double tol = 1e-12) {
    const Primitive1D &L = rp.left, &R = rp.right;
    const double g = rp.gamma;
    if (!(L.rho > 0.0) || !(R.rho > 0.0) || !(L.p > 0.0) || !(R.p > 0.0))
        throw ConfigError("Riemann states need positive density and pressure");
    const double cl = std::sqrt(g * L.p / L.rho), cr = std::sqrt(g * R.p / R.rho);
    if (2.0 * (cl + cr) / (g - 1.0) <= R.u - L.u) throw VacuumError("the Riemann data generate vacuum");

    // two-rarefaction guess, a good start for most data
    const double e = (g - 1.0) / (2.0 * g);
    double p = std::pow((cl + cr - 0.5 * (g - 1.0) * (R.u - L.u)) / (cl / std::pow(L.p, e) + cr / std::pow(R.p, e)),
                        1.0 / e);
    p = std::max(p, 1e-14);
    for (int it = 0; it < 200; ++it) {
        double fl, dfl, fr, dfr;
        detail::side_function(p, L, g, fl, dfl);
        detail::side_function(p, R, g, fr, dfr);
        const double pn = std::max(p - (fl + fr + R.u - L.u) / (dfl + dfr), 1e-14);
        const double change = 2.0 * std::abs(pn - p) / (pn + p);
        p = pn;
        if (change < tol) break;
    }
    double fl, dfl, fr, dfr;
    detail::side_function(p, L, g, fl, dfl);
    detail::side_function(p, R, g, fr, dfr);
    const double u = 0.5 * (L.u + R.u) + 0.5 * (fr - fl);
    return {p, u, detail::side_density(p, L, g), detail::side_density(p, R, g)};
}

/// Exact solution sampled at the similarity coordinate xi = x / t.
inline Primitive1D exact_riemann(const RiemannProblem& rp, double xi) {
    const RiemannStar st = solve_star(rp);
    const double g = rp.gamma;
    const Primitive1D &L = rp.left, &R = rp.right;
    const double g1 = (g - 1.0) / (g + 1.0);
    if (xi <= st.u) {
        const double cl = std::sqrt(g * L.p / L.rho);
        if (st.p > L.p) {  // left shock
            const double s = L.u - cl * std::sqrt((g + 1.0) / (2.0 * g) * st.p / L.p + (g - 1.0) / (2.0 * g));
            return xi <= s ? L : Primitive1D{st.rho_left, st.u, st.p};
        }
        const double cstar = cl * std::pow(st.p / L.p, (g - 1.0) / (2.0 * g));
        const double head = L.u - cl, tail = st.u - cstar;
        if (xi <= head) return L;
        if (xi >= tail) return {st.rho_left, st.u, st.p};
        const double c = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * (L.u - xi));
        const double rho = L.rho * std::pow(2.0 / (g + 1.0) + g1 / cl * (L.u - xi), 2.0 / (g - 1.0));
        return {rho, 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * L.u + xi), L.p * std::pow(c / cl, 2.0 * g / (g - 1.0))};
    }
    const double cr = std::sqrt(g * R.p / R.rho);
    if (st.p > R.p) {  // right shock
        const double s = R.u + cr * std::sqrt((g + 1.0) / (2.0 * g) * st.p / R.p + (g - 1.0) / (2.0 * g));
        return xi >= s ? R : Primitive1D{st.rho_right, st.u, st.p};
    }
    const double cstar = cr * std::pow(st.p / R.p, (g - 1.0) / (2.0 * g));
    const double head = R.u + cr, tail = st.u + cstar;
    if (xi >= head) return R;
    if (xi <= tail) return {st.rho_right, st.u, st.p};
    const double c = 2.0 / (g + 1.0) * (cr - 0.5 * (g - 1.0) * (R.u - xi));
    const double rho = R.rho * std::pow(2.0 / (g + 1.0) - g1 / cr * (R.u - xi), 2.0 / (g - 1.0));
    return {rho, 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * R.u + xi), R.p * std::pow(c / cr, 2.0 * g / (g - 1.0))};
}

/// Wave speeds bounding the left and right fans (head, tail) or shocks (both
/// entries equal the shock speed).
struct RiemannWaves {
    double left_head, left_tail, contact, right_tail, right_head;
};

inline RiemannWaves wave_speeds(const RiemannProblem& rp) {
    const RiemannStar st = solve_star(rp);
    const double g = rp.gamma;
    const Primitive1D &L = rp.left, &R = rp.right;
    const double cl = std::sqrt(g * L.p / L.rho), cr = std::sqrt(g * R.p / R.rho);
    RiemannWaves w{};
    w.contact = st.u;
    if (st.p > L.p) {
        w.left_head = w.left_tail =
            L.u - cl * std::sqrt((g + 1.0) / (2.0 * g) * st.p / L.p + (g - 1.0) / (2.0 * g));
    } else {
        w.left_head = L.u - cl;
        w.left_tail = st.u - cl * std::pow(st.p / L.p, (g - 1.0) / (2.0 * g));
    }
    if (st.p > R.p) {
        w.right_head = w.right_tail =
            R.u + cr * std::sqrt((g + 1.0) / (2.0 * g) * st.p / R.p + (g - 1.0) / (2.0 * g));
    } else {
        w.right_head = R.u + cr;
        w.right_tail = st.u + cr * std::pow(st.p / R.p, (g - 1.0) / (2.0 * g));
    }
    return w;
}

}  // namespace seqexp
