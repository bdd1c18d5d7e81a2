#pragma once

#include <optional>
#include <string_view>

#include "seqexp/field.hpp"
#include "seqexp/maxwell.hpp"

namespace seqexp {

/// Acoustic schemes obtained from the Maxwell ones by renaming.
enum class AcousticSchemeId { YeeOriginal, YeeCollocatedExtended, CentralExtended };

struct AcousticSchemeInfo {
    AcousticSchemeId id;
    const char* name;
    double cfl_max;  // c dt / dx
    MaxwellSchemeId maxwell;
    Layout u, v, p;
};

inline constexpr std::array<AcousticSchemeInfo, 3> kAcousticSchemes{{
    {AcousticSchemeId::YeeOriginal, "yee-original", 0.70710678118654752, MaxwellSchemeId::YeeOriginal,
     Layout::edge_x, Layout::edge_y, Layout::node},
    {AcousticSchemeId::YeeCollocatedExtended, "yee-collocated-extended", 1.0,
     MaxwellSchemeId::YeeCollocatedExtended, Layout::cell, Layout::cell, Layout::cell},
    {AcousticSchemeId::CentralExtended, "central-extended", 2.0, MaxwellSchemeId::CentralExtended, Layout::cell,
     Layout::cell, Layout::cell},
}};

inline const AcousticSchemeInfo& info(AcousticSchemeId id) { return kAcousticSchemes[static_cast<int>(id)]; }

inline std::optional<AcousticSchemeId> acoustic_scheme_from_name(std::string_view s) {
    for (const auto& e : kAcousticSchemes)
        if (s == e.name) return e.id;
    return std::nullopt;
}

/// Linear acoustics  v_t + grad p / eps^2 = 0,  p_t + c^2 div v = 0.
struct AcousticState {
    Field u, v, p;
    double c = 1.0;
    double eps = 1.0;

    static AcousticState zeros(AcousticSchemeId id, const Grid& grid, double c = 1.0, double eps = 1.0) {
        const auto& s = info(id);
        return {Field(grid, s.u), Field(grid, s.v), Field(grid, s.p), c, eps};
    }
};

namespace detail {

// Discrete divergence acting on (u, v) in the pressure update.
inline double acoustic_div_at(AcousticSchemeId id, const Field& u, const Field& v, const Grid& g, int i, int j) {
    const double dx = g.dx, dy = g.dy;
    switch (id) {
        case AcousticSchemeId::YeeOriginal: return (u(i + 1, j) - u(i, j)) / dx + (v(i, j + 1) - v(i, j)) / dy;
        case AcousticSchemeId::YeeCollocatedExtended:
            return (u(i + 1, j + 1) - u(i, j + 1) + u(i + 1, j) - u(i, j)) / (2.0 * dx) +
                   (v(i + 1, j + 1) - v(i + 1, j) + v(i, j + 1) - v(i, j)) / (2.0 * dy);
        case AcousticSchemeId::CentralExtended:
            return (avy(u, i + 1, j) - avy(u, i - 1, j)) / (2.0 * dx) + (avx(v, i, j + 1) - avx(v, i, j - 1)) / (2.0 * dy);
    }
    return 0.0;
}

}  // namespace detail

/// One sequential step: pressure first, then velocity with the new pressure.
inline void advance(AcousticSchemeId id, AcousticState& s, const Grid& grid, double dt) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    if (!(s.c > 0.0) || !(s.eps > 0.0)) throw ConfigError("sound speed and eps must be positive");
    detail::require_periodic(grid);
    const auto& in = info(id);
    if (s.u.layout() != in.u || s.v.layout() != in.v || s.p.layout() != in.p)
        throw ConfigError(std::string("field layouts do not match acoustic scheme ") + in.name);

    fill_ghosts(s.u, grid);
    fill_ghosts(s.v, grid);
    fill_ghosts(s.p, grid);
    const double c2 = s.c * s.c;
    Field div(grid, s.p.layout());
    div.for_interior([&](int i, int j, int) { div(i, j) = detail::acoustic_div_at(id, s.u, s.v, grid, i, j); });
    s.p.for_interior([&](int i, int j, int) { s.p(i, j) -= dt * c2 * div(i, j); });
    fill_ghosts(s.p, grid);

    // the gradient stencil is the Maxwell E-update operator on B
    const double k = dt / (s.eps * s.eps);
    s.u.for_interior([&](int i, int j, int) {
        const auto gr = detail::bgrad_at(in.maxwell, s.p, grid, i, j);
        s.u(i, j) -= k * gr[0];
        s.v(i, j) -= k * gr[1];
    });
}

inline AcousticState step_acoustic(AcousticSchemeId id, AcousticState s, const Grid& grid, double dt) {
    advance(id, s, grid, dt);
    return s;
}

/// Discrete vorticity D'x v - D'y u that the sequential step keeps fixed.
inline Field acoustic_vorticity(AcousticSchemeId id, AcousticState s, const Grid& grid) {
    fill_ghosts(s.u, grid);
    fill_ghosts(s.v, grid);
    const auto& in = info(id);
    // Under the renaming Ex = v, Ey = -u the Maxwell involution is this vorticity.
    MaxwellState2D m{Field(grid, in.p), s.v, s.u};
    m.Ey.scale(-1.0);
    return *discrete_involution(in.maxwell, m, grid);
}

/// Maxwell state with Bz = -p, Ex = v, Ey = -u (valid for c = eps = 1).
inline MaxwellState2D to_maxwell(const AcousticState& s) {
    MaxwellState2D m{s.p, s.v, s.u};
    m.Bz.scale(-1.0);
    m.Ey.scale(-1.0);
    return m;
}

inline AcousticState from_maxwell(const MaxwellState2D& m) {
    AcousticState s{m.Ey, m.Ex, m.Bz, 1.0, 1.0};
    s.u.scale(-1.0);
    s.p.scale(-1.0);
    return s;
}

/// Kinetic energy (1/2) sum (u^2 + v^2) dV.
inline double kinetic_energy(const AcousticState& s, const Grid& grid) {
    double sum = 0.0;
    s.u.for_interior([&](int i, int j, int) { sum += s.u(i, j) * s.u(i, j) + s.v(i, j) * s.v(i, j); });
    return 0.5 * sum * grid.cell_volume();
}

}  // namespace seqexp
