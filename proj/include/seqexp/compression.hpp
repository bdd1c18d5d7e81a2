#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqexp/error.hpp"

namespace seqexp::compression {

// One-dimensional periodic arrays throughout. Edge index e denotes the edge
// x_{e+1/2} between cells e and e+1.

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

/// Velocity samples of a given U(x) at cell centers and at edges.
struct EdgeVelocityProfile {
    std::vector<double> cells;  // U(x_i)
    std::vector<double> edges;  // U(x_{i+1/2})

    template <class F>
    static EdgeVelocityProfile sample(F&& U, int n, double dx, double x0 = 0.0) {
        EdgeVelocityProfile p;
        p.cells.resize(n);
        p.edges.resize(n);
        for (int i = 0; i < n; ++i) {
            p.cells[i] = U(x0 + (i + 0.5) * dx);
            p.edges[i] = U(x0 + (i + 1.0) * dx);
        }
        for (std::size_t i = 0; i < p.cells.size(); ++i)
            if (!std::isfinite(p.cells[i]) || !std::isfinite(p.edges[i]))
                throw ConfigError("velocity profile must be finite");
        return p;
    }
};

namespace detail {

inline void require_same(const std::vector<double>& q, const std::vector<double>& U) {
    if (q.size() != U.size() || q.empty()) throw ConfigError("q and U must have the same nonzero length");
}

inline void require_dx(double dx) {
    if (!(dx > 0.0)) throw ConfigError("dx must be positive");
}

}  // namespace detail

/// Cell-velocity upwind flux: U_i q_i for U > 0, generalized by the sign of the
/// upwind cell velocity.
inline double flux_leveque_cellU(const std::vector<double>& q, const std::vector<double>& Uc, int e) {
    detail::require_same(q, Uc);
    const int n = static_cast<int>(q.size());
    const int l = wrap(e, n), r = wrap(e + 1, n);
    return std::max(Uc[l], 0.0) * q[l] + std::min(Uc[r], 0.0) * q[r];
}

/// Roe-type flux with the average chosen to satisfy the Roe condition
/// U_R q_R - U_L q_L = Ubar (q_R - q_L). The arithmetic mean is used when q
/// does not jump.
inline double flux_roe_nonconst(const std::vector<double>& q, const std::vector<double>& Uc, int e) {
    detail::require_same(q, Uc);
    const int n = static_cast<int>(q.size());
    const int l = wrap(e, n), r = wrap(e + 1, n);
    const double fl = Uc[l] * q[l], fr = Uc[r] * q[r];
    const double dq = q[r] - q[l];
    const double scale = std::max(std::abs(q[l]), std::abs(q[r]));
    const double ubar = std::abs(dq) > 1e-14 * scale ? (fr - fl) / dq : 0.5 * (Uc[l] + Uc[r]);
    return 0.5 * (fl + fr) - 0.5 * std::abs(ubar) * dq;
}

/// Pure upwind with respect to the edge velocity.
inline double flux_edge_upwind(const std::vector<double>& q, const std::vector<double>& Ue, int e) {
    detail::require_same(q, Ue);
    const int n = static_cast<int>(q.size());
    const double U = Ue[wrap(e, n)];
    return U * (U > 0.0 ? q[wrap(e, n)] : q[wrap(e + 1, n)]);
}

/// L_i = 1 + dt (U_{i+1/2} - U_{i-1/2}) / dx, the relative cell volume after
/// the Lagrange step.
inline double lagrange_volume(const std::vector<double>& Ue, int i, double dt, double dx) {
    const int n = static_cast<int>(Ue.size());
    const double L = 1.0 + dt * (Ue[wrap(i, n)] - Ue[wrap(i - 1, n)]) / dx;
    if (!(L > 0.0))
        throw CompressionCollapse("Lagrange volume L_" + std::to_string(wrap(i, n)) + " = " + std::to_string(L) +
                                  " is not positive");
    return L;
}

inline double flux_lagrange_projection(const std::vector<double>& q, const std::vector<double>& Ue, double dt,
                                       double dx, int e) {
    detail::require_same(q, Ue);
    detail::require_dx(dx);
    const int n = static_cast<int>(q.size());
    const double U = Ue[wrap(e, n)];
    const double a = q[wrap(e, n)] / lagrange_volume(Ue, e, dt, dx);
    const double b = q[wrap(e + 1, n)] / lagrange_volume(Ue, e + 1, dt, dx);
    return 0.5 * U * (a + b) - 0.5 * std::abs(U) * (b - a);
}

/// Relaxation flux (rho* u*, rho* u*^2) of the pressureless system; a is the
/// relaxation parameter (density times speed).
inline std::array<double, 2> flux_relaxation_pressureless(double rhoL, double uL, double rhoR, double uR, double a) {
    if (!(a > 0.0)) throw ConfigError("relaxation parameter a must be positive");
    if (!(rhoL > 0.0) || !(rhoR > 0.0)) throw ConfigError("densities must be positive");
    const double us = 0.5 * (uL + uR);
    const double rho = us > 0.0 ? rhoL : rhoR;
    const double den = 1.0 + rho / (2.0 * a) * (uR - uL);
    if (!(den > 0.0))
        throw CompressionCollapse("relaxation parameter a = " + std::to_string(a) + " too small: rho* would be negative");
    const double rs = rho / den;
    return {rs * us, rs * us * us};
}

/// Backward Euler on the compressive term, upwind advection and a central
/// divergence in the denominator.
inline std::vector<double> ode_compression_update(const std::vector<double>& q, const std::vector<double>& Uc,
                                                  double dt, double dx) {
    detail::require_same(q, Uc);
    detail::require_dx(dx);
    const int n = static_cast<int>(q.size());
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double U = Uc[i];
        const double grad = U > 0.0 ? (q[i] - q[wrap(i - 1, n)]) / dx : (q[wrap(i + 1, n)] - q[i]) / dx;
        const double div = (Uc[wrap(i + 1, n)] - Uc[wrap(i - 1, n)]) / (2.0 * dx);
        const double den = 1.0 + dt * div;
        if (!(den > 0.0)) throw CompressionCollapse("denominator 1 + dt div U is not positive at cell " + std::to_string(i));
        out[i] = (q[i] - dt * U * grad) / den;
    }
    return out;
}

enum class FluxVariant { leveque_cell, roe, edge_upwind, lagrange_projection };

inline constexpr std::array<std::pair<FluxVariant, const char*>, 4> kFluxVariants{{
    {FluxVariant::leveque_cell, "leveque-cell"},
    {FluxVariant::roe, "roe"},
    {FluxVariant::edge_upwind, "edge-upwind"},
    {FluxVariant::lagrange_projection, "lagrange-projection"},
}};

inline const char* to_string(FluxVariant v) { return kFluxVariants[static_cast<int>(v)].second; }

inline std::optional<FluxVariant> flux_variant_from_name(std::string_view s) {
    for (const auto& [v, name] : kFluxVariants)
        if (s == name) return v;
    return std::nullopt;
}

/// Flux of a variant at edge e. Cell-based variants read U.cells, the others U.edges.
inline double flux(FluxVariant v, const std::vector<double>& q, const EdgeVelocityProfile& U, double dt, double dx,
                   int e) {
    switch (v) {
        case FluxVariant::leveque_cell: return flux_leveque_cellU(q, U.cells, e);
        case FluxVariant::roe: return flux_roe_nonconst(q, U.cells, e);
        case FluxVariant::edge_upwind: return flux_edge_upwind(q, U.edges, e);
        case FluxVariant::lagrange_projection: return flux_lagrange_projection(q, U.edges, dt, dx, e);
    }
    return 0.0;
}

/// Conservative step q_i -= dt/dx (f_{i+1/2} - f_{i-1/2}) on a periodic grid.
inline std::vector<double> conservative_step(FluxVariant v, const std::vector<double>& q,
                                             const EdgeVelocityProfile& U, double dt, double dx) {
    detail::require_dx(dx);
    const int n = static_cast<int>(q.size());
    std::vector<double> f(n);
    for (int e = 0; e < n; ++e) f[e] = flux(v, q, U, dt, dx, e);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = q[i] - dt / dx * (f[i] - f[wrap(i - 1, n)]);
    return out;
}

}  // namespace seqexp::compression
