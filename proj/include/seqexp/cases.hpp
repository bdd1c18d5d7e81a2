#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "seqexp/euler.hpp"
#include "seqexp/maxwell.hpp"
#include "seqexp/riemann.hpp"

namespace seqexp {

enum class CaseKind { Sod, Lax, Leveque, GreshoVortex, SmoothVortex, KelvinHelmholtz };

struct CaseId {
    CaseKind kind = CaseKind::Sod;
    double mach = 0.1;  // vortices only
};

struct CaseInfo {
    CaseKind kind;
    const char* name;
    const char* description;
    double lx, ly;
    int nx, ny;  // default resolution
    double t_end, cfl;
};

inline constexpr std::array<CaseInfo, 6> kCases{{
    {CaseKind::Sod, "sod", "Sod shock tube on [0,1], interface at 0.5", 1.0, 1.0, 1000, 2, 0.2, 0.65},
    {CaseKind::Lax, "lax", "Lax shock tube on [0,1], interface at 0.5", 1.0, 1.0, 1000, 2, 0.1, 0.65},
    {CaseKind::Leveque, "leveque", "shock tube with a transonic rarefaction", 1.0, 1.0, 1000, 2, 0.1, 0.65},
    {CaseKind::GreshoVortex, "gresho", "stationary Gresho-type vortex of maximum Mach number M", 1.0, 1.0, 50, 50, 1.0,
     0.9},
    {CaseKind::SmoothVortex, "smooth-vortex", "smooth stationary vortex of maximum Mach number M", 1.0, 1.0, 50, 50,
     0.05, 0.9},
    {CaseKind::KelvinHelmholtz, "kh", "Kelvin-Helmholtz shear layer on [0,2]x[0,1]", 2.0, 1.0, 200, 100, 5.0, 0.7},
}};

inline const CaseInfo& info(CaseKind k) { return kCases[static_cast<int>(k)]; }

inline std::optional<CaseKind> case_from_name(std::string_view s) {
    for (const auto& c : kCases)
        if (s == c.name) return c.kind;
    return std::nullopt;
}

inline bool is_shock_tube(CaseKind k) { return k == CaseKind::Sod || k == CaseKind::Lax || k == CaseKind::Leveque; }

/// Left and right states of the shock tubes.
inline RiemannProblem riemann_problem(CaseKind k, double gamma = 1.4) {
    switch (k) {
        case CaseKind::Sod: return {{1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, gamma};
        case CaseKind::Lax: return {{0.445, 0.698, 3.528}, {0.5, 0.0, 0.571}, gamma};
        case CaseKind::Leveque: return {{3.0, 0.9, 3.0}, {1.0, 0.9, 1.0}, gamma};
        default: break;
    }
    throw ConfigError(std::string("case ") + info(k).name + " is not a shock tube");
}

/// Grid for a case. Shock tubes are two cells wide and periodic in y with
/// frozen ends in x; the KH layer is periodic in x and frozen in y; the
/// smooth vortex is frozen on all sides and the Gresho vortex periodic.
inline Grid case_grid(CaseKind k, int nx = 0, int ny = 0) {
    const CaseInfo& c = info(k);
    if (nx <= 0) nx = c.nx;
    if (ny <= 0) ny = is_shock_tube(k) ? 2 : c.ny;
    if (nx < 2 || ny < 2) throw ConfigError("grid sizes must be at least 2");
    switch (k) {
        case CaseKind::Sod:
        case CaseKind::Lax:
        case CaseKind::Leveque: {
            // square cells keep dt governed by dx
            return Grid::make_2d(nx, ny, 1.0, static_cast<double>(ny) / nx, BoundaryKind::frozen,
                                 BoundaryKind::periodic);
        }
        case CaseKind::GreshoVortex: return Grid::make_2d(nx, ny, c.lx, c.ly);
        case CaseKind::SmoothVortex:
            return Grid::make_2d(nx, ny, c.lx, c.ly, BoundaryKind::frozen, BoundaryKind::frozen);
        case CaseKind::KelvinHelmholtz:
            return Grid::make_2d(nx, ny, c.lx, c.ly, BoundaryKind::periodic, BoundaryKind::frozen);
    }
    return Grid{};
}

// ---------------------------------------------------------------------------
// Vortex profiles, centered at (0.5, 0.5).

/// Azimuthal velocity of the Gresho-type vortex.
inline double gresho_vphi(double r) { return r < 0.2 ? 5.0 * r : r < 0.4 ? 2.0 - 5.0 * r : 0.0; }

inline double gresho_p0(double mach, double gamma) { return 1.0 / (gamma * mach * mach) - 0.5; }

inline double gresho_pressure(double r, double mach, double gamma = 1.4) {
    const double p0 = gresho_p0(mach, gamma);
    if (r < 0.2) return p0 + 12.5 * r * r;
    if (r < 0.4) return p0 + 4.0 * std::log(5.0 * r) + 4.0 - 20.0 * r + 12.5 * r * r;
    return p0 + 4.0 * std::log(2.0) - 2.0;
}

/// Stream function with d psi / dr = vphi, psi(0) = 0.
inline double gresho_stream(double r) {
    if (r < 0.2) return 2.5 * r * r;
    if (r < 0.4) return 0.1 + 2.0 * (r - 0.2) - 2.5 * (r * r - 0.04);
    return 0.2;
}

struct SmoothVortexParams {
    double alpha = 20.0;
    double v0 = 400.0 / 0.13;
};

inline double smooth_vphi(double r, const SmoothVortexParams& sp = {}) {
    return sp.v0 * r * r * std::exp(-sp.alpha * r);
}

inline double smooth_pressure(double r, double mach, double gamma = 1.4, const SmoothVortexParams& sp = {}) {
    const double a = sp.alpha, ar = a * r;
    const double p0 = 20.0 / (gamma * mach * mach);
    return p0 + sp.v0 * sp.v0 / (8.0 * std::pow(a, 4)) *
                    (3.0 + std::exp(-2.0 * ar) * (-3.0 - 2.0 * ar * (3.0 + ar * (3.0 + 2.0 * ar))));
}

struct CaseOptions {
    double gamma = 1.4;
    /// Gresho velocity from differences of the nodal stream function, which
    /// puts it exactly in the kernel of the node divergence. Otherwise the
    /// velocity profile is sampled at cell centers.
    bool gresho_discrete_stream = true;
};

/// Cell-sampled conserved fields, ghost layers included (they double as the
/// frozen boundary snapshot).
inline ConservedState build_case(const CaseId& id, const Grid& grid, const CaseOptions& opt = {}) {
    const double g = opt.gamma;
    if ((id.kind == CaseKind::GreshoVortex || id.kind == CaseKind::SmoothVortex) && !(id.mach > 0.0))
        throw ConfigError("vortex Mach number must be positive");
    PrimitiveState w{Field(grid, Layout::cell), Field(grid, Layout::cell), Field(grid, Layout::cell),
                     Field(grid, Layout::cell), g};
    auto fill = [&](auto&& prim) {
        const int gx = w.rho.ghost(0), gy = w.rho.ghost(1);
        for (int j = -gy; j < grid.ny + gy; ++j)
            for (int i = -gx; i < grid.nx + gx; ++i) {
                const double x = coordinate(grid, 0, i, 0), y = coordinate(grid, 1, j, 0);
                const std::array<double, 4> q = prim(i, j, x, y);
                w.rho(i, j) = q[0];
                w.u(i, j) = q[1];
                w.v(i, j) = q[2];
                w.p(i, j) = q[3];
            }
    };
    switch (id.kind) {
        case CaseKind::Sod:
        case CaseKind::Lax:
        case CaseKind::Leveque: {
            const RiemannProblem rp = riemann_problem(id.kind, g);
            fill([&](int, int, double x, double) -> std::array<double, 4> {
                const Primitive1D& s = x < 0.5 ? rp.left : rp.right;
                return {s.rho, s.u, 0.0, s.p};
            });
            break;
        }
        case CaseKind::GreshoVortex: {
            auto psi = [&](int i, int j) {  // node (i, j) sits at the upper-right corner of cell (i, j)
                const double x = grid.origin[0] + (i + 1) * grid.dx - 0.5;
                const double y = grid.origin[1] + (j + 1) * grid.dy - 0.5;
                return gresho_stream(std::hypot(x, y));
            };
            fill([&](int i, int j, double x, double y) -> std::array<double, 4> {
                const double dx = x - 0.5, dy = y - 0.5, r = std::hypot(dx, dy);
                double u, v;
                if (opt.gresho_discrete_stream) {
                    u = -(psi(i, j) - psi(i, j - 1) + psi(i - 1, j) - psi(i - 1, j - 1)) / (2.0 * grid.dy);
                    v = (psi(i, j) - psi(i - 1, j) + psi(i, j - 1) - psi(i - 1, j - 1)) / (2.0 * grid.dx);
                } else {
                    const double vp = r > 0.0 ? gresho_vphi(r) / r : 0.0;
                    u = -vp * dy;
                    v = vp * dx;
                }
                return {1.0, u, v, gresho_pressure(r, id.mach, g)};
            });
            break;
        }
        case CaseKind::SmoothVortex: {
            fill([&](int, int, double x, double y) -> std::array<double, 4> {
                const double dx = x - 0.5, dy = y - 0.5, r = std::hypot(dx, dy);
                const double vp = r > 0.0 ? smooth_vphi(r) / r : 0.0;
                return {1.0, -vp * dy, vp * dx, smooth_pressure(r, id.mach, g)};
            });
            break;
        }
        case CaseKind::KelvinHelmholtz: {
            fill([&](int, int, double x, double y) -> std::array<double, 4> {
                const bool lower = y < 0.5;
                return {lower ? 1.001 : 0.999, lower ? 0.1 : -0.1, 1e-3 * std::sin(2.0 * M_PI * x), 5.0};
            });
            break;
        }
    }
    return prim_to_cons(w);
}

/// Largest local Mach number |v| / c over the interior.
inline double max_mach(const ConservedState& s) {
    const PrimitiveState w = cons_to_prim(s);
    double m = 0.0;
    w.rho.for_interior([&](int i, int j, int) {
        m = std::max(m, std::hypot(w.u(i, j), w.v(i, j)) / w.sound_speed(i, j));
    });
    return m;
}

/// Local Mach number field |v| / c.
inline Field mach_field(const ConservedState& s) {
    const PrimitiveState w = cons_to_prim(s);
    Field m(Field(s.rho));
    w.rho.for_interior([&](int i, int j, int) { m(i, j) = std::hypot(w.u(i, j), w.v(i, j)) / w.sound_speed(i, j); });
    return m;
}

/// Plane wave for the Maxwell and acoustic steppers: Bz = cos(2 pi (x + y)),
/// E from the plane-wave relation, sampled at each field's own positions.
inline MaxwellState2D maxwell_plane_wave(MaxwellSchemeId id, const Grid& grid) {
    const auto& in = info(id);
    const double k = 2.0 * M_PI, s = 1.0 / std::sqrt(2.0);
    auto wave = [&](double x, double y) { return std::cos(k * (x + y)); };
    return {init_from([&](double x, double y) { return wave(x, y); }, grid, in.b),
            init_from([&](double x, double y) { return s * wave(x, y); }, grid, in.ex),
            init_from([&](double x, double y) { return -s * wave(x, y); }, grid, in.ey)};
}

}  // namespace seqexp
