#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "seqexp/field.hpp"
#include "seqexp/parallel.hpp"

namespace seqexp {

using Vec4 = std::array<double, 4>;

/// Conserved variables of the 2D Euler equations on cell centers.
struct ConservedState {
    Field rho, mx, my, e;
    double gamma = 1.4;

    static ConservedState zeros(const Grid& grid, double gamma = 1.4) {
        return {Field(grid, Layout::cell), Field(grid, Layout::cell), Field(grid, Layout::cell),
                Field(grid, Layout::cell), gamma};
    }

    Field& operator[](int k) { return k == 0 ? rho : k == 1 ? mx : k == 2 ? my : e; }
    const Field& operator[](int k) const { return k == 0 ? rho : k == 1 ? mx : k == 2 ? my : e; }

    Vec4 at(int i, int j) const { return {rho(i, j), mx(i, j), my(i, j), e(i, j)}; }
};

struct PrimitiveState {
    Field rho, u, v, p;
    double gamma = 1.4;

    double sound_speed(int i, int j) const { return std::sqrt(gamma * p(i, j) / rho(i, j)); }
};

inline double pressure_of(const Vec4& q, double gamma) {
    return (gamma - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0]);
}

inline Vec4 prim_to_cons(double rho, double u, double v, double p, double gamma) {
    if (!(rho > 0.0) || !(p > 0.0)) throw PositivityError("density and pressure must be positive");
    return {rho, rho * u, rho * v, p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
}

/// Physical flux along axis 0 (x) or 1 (y).
inline Vec4 physical_flux(const Vec4& q, int axis, double gamma) {
    const double p = pressure_of(q, gamma);
    const double w = q[1 + axis] / q[0];
    Vec4 f{q[1 + axis], q[1] * w, q[2] * w, w * (q[3] + p)};
    f[1 + axis] += p;
    return f;
}

/// Converts every stored value (ghosts included). Interior values must be admissible.
inline PrimitiveState cons_to_prim(const ConservedState& s) {
    PrimitiveState w{s.rho, s.mx, s.my, s.e, s.gamma};
    auto& d = s.rho.data();
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double r = d[k];
        const double u = s.mx.data()[k] / r, v = s.my.data()[k] / r;
        w.u.data()[k] = u;
        w.v.data()[k] = v;
        w.p.data()[k] = (s.gamma - 1.0) * (s.e.data()[k] - 0.5 * r * (u * u + v * v));
    }
    s.rho.for_interior([&](int i, int j, int) {
        if (!(w.rho(i, j) > 0.0) || !(w.p(i, j) > 0.0)) {
            std::ostringstream os;
            os << "non-positive density or pressure in cell (" << i << ", " << j << ")";
            throw PositivityError(os.str());
        }
    });
    return w;
}

inline ConservedState prim_to_cons(const PrimitiveState& w) {
    ConservedState s{w.rho, w.u, w.v, w.p, w.gamma};
    for (std::size_t k = 0; k < w.rho.data().size(); ++k) {
        const double r = w.rho.data()[k], u = w.u.data()[k], v = w.v.data()[k], p = w.p.data()[k];
        s.mx.data()[k] = r * u;
        s.my.data()[k] = r * v;
        s.e.data()[k] = p / (w.gamma - 1.0) + 0.5 * r * (u * u + v * v);
    }
    return s;
}

/// Ghost policy for an Euler run: the grid's boundary kinds plus the snapshot
/// used by frozen axes. Reflective axes negate the normal momentum.
struct EulerBoundary {
    const ConservedState* frozen = nullptr;
};

inline void fill_ghosts(ConservedState& s, const Grid& grid, const EulerBoundary& bnd = {}) {
    const ConservedState* fz = bnd.frozen;
    fill_ghosts(s.rho, grid, fz ? &fz->rho : nullptr);
    fill_ghosts(s.mx, grid, fz ? &fz->mx : nullptr, {-1.0, 1.0, 1.0});
    fill_ghosts(s.my, grid, fz ? &fz->my : nullptr, {1.0, -1.0, 1.0});
    fill_ghosts(s.e, grid, fz ? &fz->e : nullptr);
}

/// Numerical fluxes on the edges around the interior. fx(i, j) is the flux
/// through the edge between cells i-1 and i, for i in [0, nx]; fy likewise.
struct EdgeFluxes {
    int nx = 0, ny = 0;
    std::vector<Vec4> x, y;

    Vec4& fx(int i, int j) { return x[static_cast<std::size_t>(j) * (nx + 1) + i]; }
    const Vec4& fx(int i, int j) const { return x[static_cast<std::size_t>(j) * (nx + 1) + i]; }
    Vec4& fy(int i, int j) { return y[static_cast<std::size_t>(j) * nx + i]; }
    const Vec4& fy(int i, int j) const { return y[static_cast<std::size_t>(j) * nx + i]; }
};

struct EulerOptions {
    double denominator_floor = 0.1;
    int threads = 1;
};

namespace detail {

inline void collapse(int axis, int i, int j, double den) {
    std::ostringstream os;
    os << "compressive denominator " << den << " below floor on " << (axis == 0 ? "x" : "y") << "-edge near cell ("
       << i << ", " << j << "); reduce the CFL number";
    throw CompressionCollapse(os.str());
}

// Cell-wise velocities, pressure and physical fluxes over the whole storage.
struct CellData {
    Field u, v;
    std::array<Field, 4> fx, fy;
};

inline CellData cell_data(const ConservedState& s, const Grid& grid) {
    CellData c{Field(grid, Layout::cell), Field(grid, Layout::cell), {}, {}};
    for (int k = 0; k < 4; ++k) {
        c.fx[k] = Field(grid, Layout::cell);
        c.fy[k] = Field(grid, Layout::cell);
    }
    const std::size_t n = s.rho.data().size();
    for (std::size_t q = 0; q < n; ++q) {
        const Vec4 cons{s.rho.data()[q], s.mx.data()[q], s.my.data()[q], s.e.data()[q]};
        c.u.data()[q] = cons[1] / cons[0];
        c.v.data()[q] = cons[2] / cons[0];
        const Vec4 a = physical_flux(cons, 0, s.gamma), b = physical_flux(cons, 1, s.gamma);
        for (int k = 0; k < 4; ++k) {
            c.fx[k].data()[q] = a[k];
            c.fy[k].data()[q] = b[k];
        }
    }
    return c;
}

}  // namespace detail

/// Extended multi-dimensional fluxes on every x- and y-edge bounding the
/// interior, for the components k0 <= k < k1. Ghosts of s must be filled.
///
/// x-edge (i+1/2, j):
///   numerator   = {{ {f(q)}_{i+1/2} }}_{j+-1/2} / 8 - |u*| [q]_{i+1/2} / 2
///   denominator = 1 + dt ( {{[u]_{i+1/2}}}_{j+-1/2} / (4 dx) + [{v}_{i+1/2}]_{j+-1} / (4 dy) )
inline EdgeFluxes extended_fluxes(const ConservedState& s, const Grid& grid, double dt, int k0 = 0, int k1 = 4,
                                  const EulerOptions& opt = {}) {
    const detail::CellData c = detail::cell_data(s, grid);
    const Field& u = c.u;
    const Field& v = c.v;
    const double dx = grid.dx, dy = grid.dy;
    EdgeFluxes F{grid.nx, grid.ny, std::vector<Vec4>(static_cast<std::size_t>(grid.nx + 1) * grid.ny),
                 std::vector<Vec4>(static_cast<std::size_t>(grid.nx) * (grid.ny + 1))};

    // x-edges: F.fx(i+1, j) lies between cells i and i+1
    parallel_rows(0, grid.ny, opt.threads, [&](int j) {
        for (int i = -1; i < grid.nx; ++i) {
            const double du = (u(i + 1, j + 1) - u(i, j + 1)) + 2.0 * (u(i + 1, j) - u(i, j)) +
                              (u(i + 1, j - 1) - u(i, j - 1));
            const double sv = (v(i + 1, j + 1) + v(i, j + 1)) - (v(i + 1, j - 1) + v(i, j - 1));
            const double den = 1.0 + dt * (du / (4.0 * dx) + sv / (4.0 * dy));
            if (!(den > opt.denominator_floor)) detail::collapse(0, i, j, den);
            const double ustar = std::abs(0.5 * (u(i + 1, j) + u(i, j)));
            Vec4& out = F.fx(i + 1, j);
            for (int k = k0; k < k1; ++k) {
                const Field& f = c.fx[k];
                const double central = ((f(i + 1, j + 1) + f(i, j + 1)) + 2.0 * (f(i + 1, j) + f(i, j)) +
                                        (f(i + 1, j - 1) + f(i, j - 1))) /
                                       8.0;
                out[k] = (central - 0.5 * ustar * (s[k](i + 1, j) - s[k](i, j))) / den;
            }
        }
    });
    // y-edges: F.fy(i, j+1) lies between cells j and j+1
    parallel_rows(-1, grid.ny, opt.threads, [&](int j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double su = (u(i + 1, j + 1) - u(i - 1, j + 1)) + (u(i + 1, j) - u(i - 1, j));
            const double dv = (v(i + 1, j + 1) - v(i + 1, j)) + 2.0 * (v(i, j + 1) - v(i, j)) +
                              (v(i - 1, j + 1) - v(i - 1, j));
            const double den = 1.0 + dt * (su / (4.0 * dx) + dv / (4.0 * dy));
            if (!(den > opt.denominator_floor)) detail::collapse(1, i, j, den);
            const double vstar = std::abs(0.5 * (v(i, j + 1) + v(i, j)));
            Vec4& out = F.fy(i, j + 1);
            for (int k = k0; k < k1; ++k) {
                const Field& f = c.fy[k];
                const double central = ((f(i + 1, j + 1) + f(i + 1, j)) + 2.0 * (f(i, j + 1) + f(i, j)) +
                                        (f(i - 1, j + 1) + f(i - 1, j))) /
                                       8.0;
                out[k] = (central - 0.5 * vstar * (s[k](i, j + 1) - s[k](i, j))) / den;
            }
        }
    });
    return F;
}

/// Flux divergence (fx_{i+1/2} - fx_{i-1/2})/dx + (fy_{j+1/2} - fy_{j-1/2})/dy,
/// so that q^{n+1} = q^n - dt * rhs. Ghosts of s must be filled.
inline std::array<Field, 4> rhs(const ConservedState& s, const Grid& grid, double dt, int k0 = 0, int k1 = 4,
                                const EulerOptions& opt = {}) {
    const EdgeFluxes F = extended_fluxes(s, grid, dt, k0, k1, opt);
    std::array<Field, 4> r;
    for (auto& f : r) f = Field(grid, Layout::cell);
    s.rho.for_interior([&](int i, int j, int) {
        for (int k = k0; k < k1; ++k)
            r[k](i, j) = (F.fx(i + 1, j)[k] - F.fx(i, j)[k]) / grid.dx + (F.fy(i, j + 1)[k] - F.fy(i, j)[k]) / grid.dy;
    });
    return r;
}

/// Throws PositivityError if any interior cell has non-positive density or
/// internal energy (or a non-finite value).
inline void check_admissible(const ConservedState& s) {
    s.rho.for_interior([&](int i, int j, int) {
        const double r = s.rho(i, j);
        const double ei = s.e(i, j) - 0.5 * (s.mx(i, j) * s.mx(i, j) + s.my(i, j) * s.my(i, j)) / r;
        if (!(r > 0.0) || !(ei > 0.0) || !std::isfinite(ei)) {
            std::ostringstream os;
            os << "positivity violated in cell (" << i << ", " << j << "): rho = " << r << ", internal energy = " << ei;
            throw PositivityError(os.str());
        }
    });
}

/// One step of the sequential scheme: momentum from level n, then density and
/// energy with the new momentum (velocities m^{n+1} / rho^n in that pass).
inline void advance(ConservedState& s, const Grid& grid, double dt, const EulerBoundary& bnd = {},
                    const EulerOptions& opt = {}) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    fill_ghosts(s, grid, bnd);
    {
        const auto r = rhs(s, grid, dt, 1, 3, opt);
        s.mx.for_interior([&](int i, int j, int) {
            s.mx(i, j) -= dt * r[1](i, j);
            s.my(i, j) -= dt * r[2](i, j);
        });
    }
    const ConservedState* fz = bnd.frozen;
    fill_ghosts(s.mx, grid, fz ? &fz->mx : nullptr, {-1.0, 1.0, 1.0});
    fill_ghosts(s.my, grid, fz ? &fz->my : nullptr, {1.0, -1.0, 1.0});
    {
        const auto r = rhs(s, grid, dt, 0, 4, EulerOptions{opt.denominator_floor, opt.threads});
        s.rho.for_interior([&](int i, int j, int) {
            s.rho(i, j) -= dt * r[0](i, j);
            s.e(i, j) -= dt * r[3](i, j);
        });
    }
    check_admissible(s);
}

inline ConservedState step_euler(ConservedState s, const Grid& grid, double dt, const EulerBoundary& bnd = {},
                                 const EulerOptions& opt = {}) {
    advance(s, grid, dt, bnd, opt);
    return s;
}

/// dt = cfl * min(dx, dy) / max (|u| + |v| + c sqrt(2/gamma)) over the interior.
inline double compute_dt(const ConservedState& s, const Grid& grid, double cfl) {
    if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
    const double k = std::sqrt(2.0 / s.gamma);
    double smax = 0.0;
    s.rho.for_interior([&](int i, int j, int) {
        const Vec4 q = s.at(i, j);
        const double u = q[1] / q[0], v = q[2] / q[0];
        const double c = std::sqrt(s.gamma * pressure_of(q, s.gamma) / q[0]);
        const double sp = std::abs(u) + std::abs(v) + c * k;
        if (!std::isfinite(sp)) throw PositivityError("non-finite signal speed while computing the time step");
        smax = std::max(smax, sp);
    });
    if (smax == 0.0) return INFINITY;
    return cfl * std::min(grid.dx, grid.dy) / smax;
}

/// Advances to t_end with dt from compute_dt, shortening the last step to
/// land on t_end. observer(state, t, step) runs after every step. Returns the
/// number of steps taken.
template <class Observer>
long integrate(ConservedState& s, const Grid& grid, double cfl, double t_end, const EulerBoundary& bnd,
               const EulerOptions& opt, Observer&& observer) {
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
    double t = 0.0;
    long n = 0;
    while (t < t_end) {
        double dt = compute_dt(s, grid, cfl);
        if (t + dt >= t_end * (1.0 - 1e-14)) dt = t_end - t;
        if (!(dt > 0.0)) break;
        advance(s, grid, dt, bnd, opt);
        t = (t + dt >= t_end * (1.0 - 1e-14)) ? t_end : t + dt;
        ++n;
        observer(static_cast<const ConservedState&>(s), t, n);
    }
    return n;
}

inline long integrate(ConservedState& s, const Grid& grid, double cfl, double t_end, const EulerBoundary& bnd = {},
                      const EulerOptions& opt = {}) {
    return integrate(s, grid, cfl, t_end, bnd, opt, [](const ConservedState&, double, long) {});
}

/// Vertex divergence at node (i+1/2, j+1/2):
/// (u_{i+1,j} - u_{ij} + u_{i+1,j+1} - u_{i,j+1}) / (2 dx) + (v_{i+1,j+1} - v_{i+1,j} + v_{i,j+1} - v_{ij}) / (2 dy).
/// Ghosts of u and v must be filled.
inline Field node_divergence(const Field& u, const Field& v, const Grid& grid) {
    Field d(grid, Layout::node);
    d.for_interior([&](int i, int j, int) {
        d(i, j) = (u(i + 1, j) - u(i, j) + u(i + 1, j + 1) - u(i, j + 1)) / (2.0 * grid.dx) +
                  (v(i + 1, j + 1) - v(i + 1, j) + v(i, j + 1) - v(i, j)) / (2.0 * grid.dy);
    });
    return d;
}

inline Field node_divergence(const PrimitiveState& w, const Grid& grid) { return node_divergence(w.u, w.v, grid); }

/// (1/N) sum |[M^2 p]_{i+-1}| / 2 over the interior; ghosts of p must be filled.
inline double rescaled_pressure_gradient_norm(const Field& p, double mach) {
    double sum = 0.0;
    long n = 0;
    p.for_interior([&](int i, int j, int) {
        sum += std::abs(mach * mach * (p(i + 1, j) - p(i - 1, j))) / 2.0;
        ++n;
    });
    return sum / static_cast<double>(n);
}

inline double rescaled_pressure_gradient_norm(const PrimitiveState& w, double mach) {
    return rescaled_pressure_gradient_norm(w.p, mach);
}

/// Interior sums of rho, mx, my, e times the cell volume.
inline Vec4 conserved_totals(const ConservedState& s, const Grid& grid) {
    Vec4 t{0, 0, 0, 0};
    for (int k = 0; k < 4; ++k) t[k] = s[k].interior_sum() * grid.cell_volume();
    return t;
}

}  // namespace seqexp
