#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "seqexp/field.hpp"
#include "seqexp/stencil.hpp"

namespace seqexp {

enum class MaxwellSchemeId {
    YeeOriginal,
    YeeCollocated,
    YeeCollocatedExplicit,
    YeeCollocatedExtended,
    YeeExtendedStaggered,
    Central,
    CentralExtended,
    UpwindSplit,
    StatPresReference,
    YeeExtended3D
};

struct MaxwellSchemeInfo {
    MaxwellSchemeId id;
    const char* name;
    double cfl_max;     // stability limit of c dt / dx with dx == dy
    bool sequential;    // E-update consumes the new B
    Layout b, ex, ey;   // 2D layouts
};

inline constexpr std::array<MaxwellSchemeInfo, 10> kMaxwellSchemes{{
    {MaxwellSchemeId::YeeOriginal, "yee-original", 0.70710678118654752, true, Layout::node, Layout::edge_y, Layout::edge_x},
    {MaxwellSchemeId::YeeCollocated, "yee-collocated", 0.70710678118654752, true, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::YeeCollocatedExplicit, "yee-explicit", 0.70710678118654752, true, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::YeeCollocatedExtended, "yee-collocated-extended", 1.0, true, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::YeeExtendedStaggered, "yee-extended", 1.0, true, Layout::node, Layout::cell, Layout::cell},
    {MaxwellSchemeId::Central, "central", 1.4142135623730951, true, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::CentralExtended, "central-extended", 2.0, true, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::UpwindSplit, "upwind", 0.5, false, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::StatPresReference, "statpres", 1.0, false, Layout::cell, Layout::cell, Layout::cell},
    {MaxwellSchemeId::YeeExtended3D, "yee-extended-3d", 1.0, true, Layout::node, Layout::cell, Layout::cell},
}};

inline const MaxwellSchemeInfo& info(MaxwellSchemeId id) { return kMaxwellSchemes[static_cast<int>(id)]; }

inline std::optional<MaxwellSchemeId> maxwell_scheme_from_name(std::string_view s) {
    for (const auto& e : kMaxwellSchemes)
        if (s == e.name) return e.id;
    if (s == "yee") return MaxwellSchemeId::YeeOriginal;
    return std::nullopt;
}

struct MaxwellState2D {
    Field Bz, Ex, Ey;

    static MaxwellState2D zeros(MaxwellSchemeId id, const Grid& grid) {
        const auto& s = info(id);
        return {Field(grid, s.b), Field(grid, s.ex), Field(grid, s.ey)};
    }
};

struct MaxwellState3D {
    Field Bx, By, Bz, Ex, Ey, Ez;

    static MaxwellState3D zeros(const Grid& grid) {
        return {Field(grid, Layout::node), Field(grid, Layout::node), Field(grid, Layout::node),
                Field(grid, Layout::cell), Field(grid, Layout::cell), Field(grid, Layout::cell)};
    }
};

namespace detail {

inline void require_periodic(const Grid& grid) {
    for (int a = 0; a < grid.dims(); ++a)
        if (grid.bc[a] != BoundaryKind::periodic)
            throw ConfigError("the Maxwell and acoustic steppers support periodic boundaries only");
}

inline void check_layouts(MaxwellSchemeId id, const MaxwellState2D& s) {
    const auto& in = info(id);
    if (id == MaxwellSchemeId::YeeExtended3D) throw ConfigError("yee-extended-3d needs a 3D state");
    if (s.Bz.layout() != in.b || s.Ex.layout() != in.ex || s.Ey.layout() != in.ey)
        throw ConfigError(std::string("field layouts do not match scheme ") + in.name);
}

// q averaged along x, (q_{i+1} + 2 q_i + q_{i-1}) / 4
inline double avx(const Field& q, int i, int j) { return 0.25 * (q(i + 1, j) + 2.0 * q(i, j) + q(i - 1, j)); }
inline double avy(const Field& q, int i, int j) { return 0.25 * (q(i, j + 1) + 2.0 * q(i, j) + q(i, j - 1)); }

// Magnetic-field update operator, i.e. the scheme's discrete curl of E.
// The B-update of every sequential scheme is B -= dt * curl_h(E).
inline double curl_at(MaxwellSchemeId id, const Field& Ex, const Field& Ey, const Grid& g, int i, int j) {
    const double dx = g.dx, dy = g.dy;
    switch (id) {
        case MaxwellSchemeId::YeeOriginal:
        case MaxwellSchemeId::YeeCollocated:
        case MaxwellSchemeId::YeeCollocatedExplicit:
            return (Ey(i + 1, j) - Ey(i, j)) / dx - (Ex(i, j + 1) - Ex(i, j)) / dy;
        case MaxwellSchemeId::YeeCollocatedExtended:
        case MaxwellSchemeId::YeeExtendedStaggered:
            return (Ey(i + 1, j + 1) - Ey(i, j + 1) + Ey(i + 1, j) - Ey(i, j)) / (2.0 * dx) -
                   (Ex(i + 1, j + 1) - Ex(i + 1, j) + Ex(i, j + 1) - Ex(i, j)) / (2.0 * dy);
        case MaxwellSchemeId::Central:
        case MaxwellSchemeId::UpwindSplit:
            return (Ey(i + 1, j) - Ey(i - 1, j)) / (2.0 * dx) - (Ex(i, j + 1) - Ex(i, j - 1)) / (2.0 * dy);
        case MaxwellSchemeId::CentralExtended:
        case MaxwellSchemeId::StatPresReference:
            return (avy(Ey, i + 1, j) - avy(Ey, i - 1, j)) / (2.0 * dx) -
                   (avx(Ex, i, j + 1) - avx(Ex, i, j - 1)) / (2.0 * dy);
        case MaxwellSchemeId::YeeExtended3D: break;
    }
    throw ConfigError("no 2D curl for this scheme");
}

// Gradient-type operator applied to B in the E-update of sequential schemes:
// Ex += dt * gy, Ey -= dt * gx.
inline std::array<double, 2> bgrad_at(MaxwellSchemeId id, const Field& B, const Grid& g, int i, int j) {
    const double dx = g.dx, dy = g.dy;
    switch (id) {
        case MaxwellSchemeId::YeeOriginal:
        case MaxwellSchemeId::YeeCollocated:
            return {(B(i, j) - B(i - 1, j)) / dx, (B(i, j) - B(i, j - 1)) / dy};
        case MaxwellSchemeId::YeeCollocatedExtended:
        case MaxwellSchemeId::YeeExtendedStaggered:
            return {(B(i, j) - B(i - 1, j) + B(i, j - 1) - B(i - 1, j - 1)) / (2.0 * dx),
                    (B(i, j) - B(i, j - 1) + B(i - 1, j) - B(i - 1, j - 1)) / (2.0 * dy)};
        case MaxwellSchemeId::Central:
            return {(B(i + 1, j) - B(i - 1, j)) / (2.0 * dx), (B(i, j + 1) - B(i, j - 1)) / (2.0 * dy)};
        case MaxwellSchemeId::CentralExtended:
            return {(avy(B, i + 1, j) - avy(B, i - 1, j)) / (2.0 * dx),
                    (avx(B, i, j + 1) - avx(B, i, j - 1)) / (2.0 * dy)};
        default: break;
    }
    throw ConfigError("no sequential E-update for this scheme");
}

inline void fill_all(MaxwellState2D& s, const Grid& grid) {
    fill_ghosts(s.Bz, grid);
    fill_ghosts(s.Ex, grid);
    fill_ghosts(s.Ey, grid);
}

inline void step_sequential(MaxwellSchemeId id, MaxwellState2D& s, const Grid& grid, double dt) {
    fill_all(s, grid);
    Field curl(grid, s.Bz.layout());
    curl.for_interior([&](int i, int j, int) { curl(i, j) = curl_at(id, s.Ex, s.Ey, grid, i, j); });
    s.Bz.for_interior([&](int i, int j, int) { s.Bz(i, j) -= dt * curl(i, j); });
    fill_ghosts(s.Bz, grid);
    s.Ex.for_interior([&](int i, int j, int) {
        const auto gr = bgrad_at(id, s.Bz, grid, i, j);
        s.Ex(i, j) += dt * gr[1];
        s.Ey(i, j) -= dt * gr[0];
    });
}

// Fully explicit form of the collocated Yee scheme: every value at n+1 is
// computed from level n only, with the dt/dx cross terms written out.
inline void step_yee_explicit(MaxwellState2D& s, const Grid& grid, double dt) {
    fill_all(s, grid);
    const double dx = grid.dx, dy = grid.dy;
    const Field& B = s.Bz;
    const Field& Ex = s.Ex;
    const Field& Ey = s.Ey;
    MaxwellState2D out = s;
    B.for_interior([&](int i, int j, int) {
        out.Bz(i, j) = B(i, j) - dt * ((Ey(i + 1, j) - Ey(i, j)) / dx - (Ex(i, j + 1) - Ex(i, j)) / dy);
        out.Ex(i, j) =
            Ex(i, j) + dt * ((B(i, j) - B(i, j - 1)) / dy -
                             dt / dy *
                                 ((Ey(i + 1, j) - Ey(i, j) - Ey(i + 1, j - 1) + Ey(i, j - 1)) / dx -
                                  (Ex(i, j + 1) - 2.0 * Ex(i, j) + Ex(i, j - 1)) / dy));
        out.Ey(i, j) =
            Ey(i, j) + dt * (-(B(i, j) - B(i - 1, j)) / dx +
                             dt / dx *
                                 ((Ey(i + 1, j) - 2.0 * Ey(i, j) + Ey(i - 1, j)) / dx -
                                  (Ex(i, j + 1) - Ex(i, j) - Ex(i - 1, j + 1) + Ex(i - 1, j)) / dy));
    });
    s = std::move(out);
}

inline void step_upwind(MaxwellState2D& s, const Grid& grid, double dt) {
    fill_all(s, grid);
    const double dx = grid.dx, dy = grid.dy;
    const Field& B = s.Bz;
    const Field& Ex = s.Ex;
    const Field& Ey = s.Ey;
    MaxwellState2D out = s;
    B.for_interior([&](int i, int j, int) {
        out.Bz(i, j) = B(i, j) + dt * (-curl_at(MaxwellSchemeId::UpwindSplit, Ex, Ey, grid, i, j) +
                                       0.5 * (B(i + 1, j) - 2.0 * B(i, j) + B(i - 1, j)) / dx +
                                       0.5 * (B(i, j + 1) - 2.0 * B(i, j) + B(i, j - 1)) / dy);
        out.Ex(i, j) = Ex(i, j) + dt * ((B(i, j + 1) - B(i, j - 1)) / (2.0 * dy) +
                                        0.5 * (Ex(i, j + 1) - 2.0 * Ex(i, j) + Ex(i, j - 1)) / dy);
        out.Ey(i, j) = Ey(i, j) + dt * (-(B(i + 1, j) - B(i - 1, j)) / (2.0 * dx) +
                                        0.5 * (Ey(i + 1, j) - 2.0 * Ey(i, j) + Ey(i - 1, j)) / dx);
    });
    s = std::move(out);
}

inline void step_statpres(MaxwellState2D& s, const Grid& grid, double dt) {
    fill_all(s, grid);
    const double dx = grid.dx, dy = grid.dy;
    const Field& B = s.Bz;
    const Field& Ex = s.Ex;
    const Field& Ey = s.Ey;
    MaxwellState2D out = s;
    B.for_interior([&](int i, int j, int) {
        out.Bz(i, j) =
            B(i, j) + dt * (-curl_at(MaxwellSchemeId::StatPresReference, Ex, Ey, grid, i, j) +
                            0.5 * (avy(B, i + 1, j) - 2.0 * avy(B, i, j) + avy(B, i - 1, j)) / dx +
                            0.5 * (avx(B, i, j + 1) - 2.0 * avx(B, i, j) + avx(B, i, j - 1)) / dy);
        out.Ex(i, j) =
            Ex(i, j) + dt * ((avx(B, i, j + 1) - avx(B, i, j - 1)) / (2.0 * dy) +
                             0.5 * (-(Ey(i + 1, j + 1) - Ey(i + 1, j - 1) - Ey(i - 1, j + 1) + Ey(i - 1, j - 1)) / (4.0 * dx) +
                                    (avx(Ex, i, j + 1) - 2.0 * avx(Ex, i, j) + avx(Ex, i, j - 1)) / dy));
        out.Ey(i, j) =
            Ey(i, j) + dt * (-(avy(B, i + 1, j) - avy(B, i - 1, j)) / (2.0 * dx) +
                             0.5 * ((avy(Ey, i + 1, j) - 2.0 * avy(Ey, i, j) + avy(Ey, i - 1, j)) / dx -
                                    (Ex(i + 1, j + 1) - Ex(i + 1, j - 1) - Ex(i - 1, j + 1) + Ex(i - 1, j - 1)) / (4.0 * dy)));
    });
    s = std::move(out);
}

// One extended-curl term of the 3D scheme: a jump along `jump_axis` and sums
// along the two other axes, divided by 4 h. Cell data lands on nodes and node
// data lands on cells.
inline Field curl_term_3d(const Field& q, const Grid& grid, int jump_axis) {
    BracketExpr e;
    for (int a = 0; a < 3; ++a) e.then(a, a == jump_axis ? BracketOp::jump_half : BracketOp::sum_half);
    e.divide_by(4.0 * grid.h(jump_axis));
    return apply_bracket(e, q, grid);
}

}  // namespace detail

/// Advances a 2D state by one step in place.
inline void advance(MaxwellSchemeId id, MaxwellState2D& s, const Grid& grid, double dt) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    detail::require_periodic(grid);
    detail::check_layouts(id, s);
    switch (id) {
        case MaxwellSchemeId::YeeCollocatedExplicit: detail::step_yee_explicit(s, grid, dt); break;
        case MaxwellSchemeId::UpwindSplit: detail::step_upwind(s, grid, dt); break;
        case MaxwellSchemeId::StatPresReference: detail::step_statpres(s, grid, dt); break;
        default: detail::step_sequential(id, s, grid, dt); break;
    }
}

inline MaxwellState2D step(MaxwellSchemeId id, MaxwellState2D s, const Grid& grid, double dt) {
    advance(id, s, grid, dt);
    return s;
}

/// Advances the 3D extended Yee state (B on nodes, E in cells) by one step.
inline void advance(MaxwellState3D& s, const Grid& grid, double dt) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    if (grid.dims() != 3) throw ConfigError("yee-extended-3d needs a 3D grid");
    detail::require_periodic(grid);
    using detail::curl_term_3d;
    for (Field* f : {&s.Ex, &s.Ey, &s.Ez, &s.Bx, &s.By, &s.Bz}) fill_ghosts(*f, grid);
    s.Bx.axpy(-dt, curl_term_3d(s.Ez, grid, 1));
    s.Bx.axpy(dt, curl_term_3d(s.Ey, grid, 2));
    s.By.axpy(-dt, curl_term_3d(s.Ex, grid, 2));
    s.By.axpy(dt, curl_term_3d(s.Ez, grid, 0));
    s.Bz.axpy(-dt, curl_term_3d(s.Ey, grid, 0));
    s.Bz.axpy(dt, curl_term_3d(s.Ex, grid, 1));
    for (Field* f : {&s.Bx, &s.By, &s.Bz}) fill_ghosts(*f, grid);
    s.Ex.axpy(dt, curl_term_3d(s.Bz, grid, 1));
    s.Ex.axpy(-dt, curl_term_3d(s.By, grid, 2));
    s.Ey.axpy(dt, curl_term_3d(s.Bx, grid, 2));
    s.Ey.axpy(-dt, curl_term_3d(s.Bz, grid, 0));
    s.Ez.axpy(dt, curl_term_3d(s.By, grid, 0));
    s.Ez.axpy(-dt, curl_term_3d(s.Bx, grid, 1));
}

/// The discrete divergence of E that a sequential scheme keeps invariant.
///
/// It is built from the same difference operators that act on B in the
/// E-update (backward differences for the Yee family, vertex averages for the
/// extended schemes, central forms otherwise), so it is annihilated by the
/// E-increment and stays fixed for all time. The stationarity-preserving
/// reference scheme keeps the averaged central divergence. Schemes without
/// such a quantity return nullopt.
inline std::optional<Field> discrete_involution(MaxwellSchemeId id, MaxwellState2D s, const Grid& grid) {
    using detail::avx;
    using detail::avy;
    if (id == MaxwellSchemeId::UpwindSplit || id == MaxwellSchemeId::YeeExtended3D)
        return std::nullopt;
    detail::fill_all(s, grid);
    const double dx = grid.dx, dy = grid.dy;
    const Field& Ex = s.Ex;
    const Field& Ey = s.Ey;
    switch (id) {
        case MaxwellSchemeId::YeeCollocatedExtended:
        case MaxwellSchemeId::YeeExtendedStaggered: {
            Field d(grid, Layout::node);
            d.for_interior([&](int i, int j, int) {
                d(i, j) = (Ex(i + 1, j) - Ex(i, j) + Ex(i + 1, j + 1) - Ex(i, j + 1)) / (2.0 * dx) +
                          (Ey(i, j + 1) - Ey(i, j) + Ey(i + 1, j + 1) - Ey(i + 1, j)) / (2.0 * dy);
            });
            return d;
        }
        default: break;
    }
    Field d(grid, Layout::cell);
    d.for_interior([&](int i, int j, int) {
        switch (id) {
            case MaxwellSchemeId::Central:
                d(i, j) = (Ex(i + 1, j) - Ex(i - 1, j)) / (2.0 * dx) + (Ey(i, j + 1) - Ey(i, j - 1)) / (2.0 * dy);
                break;
            case MaxwellSchemeId::CentralExtended:
            case MaxwellSchemeId::StatPresReference:
                d(i, j) = (avy(Ex, i + 1, j) - avy(Ex, i - 1, j)) / (2.0 * dx) +
                          (avx(Ey, i, j + 1) - avx(Ey, i, j - 1)) / (2.0 * dy);
                break;
            default:
                d(i, j) = (Ex(i, j) - Ex(i - 1, j)) / dx + (Ey(i, j) - Ey(i, j - 1)) / dy;
                break;
        }
    });
    return d;
}

/// The scheme's discrete curl of E (the operator in its B-update). States with
/// B constant and a vanishing discrete curl are exactly stationary.
inline Field stationary_curl(MaxwellSchemeId id, MaxwellState2D s, const Grid& grid) {
    detail::fill_all(s, grid);
    Field c(grid, s.Bz.layout());
    c.for_interior([&](int i, int j, int) { c(i, j) = detail::curl_at(id, s.Ex, s.Ey, grid, i, j); });
    return c;
}

/// Divergences of B (forward, node to cell) and E (backward, cell to node)
/// of the 3D extended scheme; both are invariant under stepping.
inline std::array<Field, 2> discrete_involution(const MaxwellState3D& s0, const Grid& grid) {
    MaxwellState3D s = s0;
    for (Field* f : {&s.Ex, &s.Ey, &s.Ez, &s.Bx, &s.By, &s.Bz}) fill_ghosts(*f, grid);
    using detail::curl_term_3d;
    Field divB = curl_term_3d(s.Bx, grid, 0);
    divB.axpy(1.0, curl_term_3d(s.By, grid, 1));
    divB.axpy(1.0, curl_term_3d(s.Bz, grid, 2));
    Field divE = curl_term_3d(s.Ex, grid, 0);
    divE.axpy(1.0, curl_term_3d(s.Ey, grid, 1));
    divE.axpy(1.0, curl_term_3d(s.Ez, grid, 2));
    return {std::move(divB), std::move(divE)};
}

/// Plain Euclidean norm sqrt(sum |q|^2 dV) over Bz, Ex, Ey.
inline double l2_norm(const MaxwellState2D& s, const Grid& grid) {
    double sum = 0.0;
    for (const Field* f : {&s.Bz, &s.Ex, &s.Ey}) f->for_interior([&](int i, int j, int) { sum += (*f)(i, j) * (*f)(i, j); });
    return std::sqrt(sum * grid.cell_volume());
}

/// Time-staggered energy norm of a sequential scheme,
/// sqrt(sum (B^n B^{n+1} + |E^n|^2) dV), which the step conserves exactly.
inline double staggered_energy_norm(MaxwellSchemeId id, const MaxwellState2D& s, const Grid& grid, double dt) {
    const MaxwellState2D next = step(id, s, grid, dt);
    double sum = 0.0;
    s.Bz.for_interior([&](int i, int j, int) {
        sum += s.Bz(i, j) * next.Bz(i, j) + s.Ex(i, j) * s.Ex(i, j) + s.Ey(i, j) * s.Ey(i, j);
    });
    return std::sqrt(sum * grid.cell_volume());
}

}  // namespace seqexp
