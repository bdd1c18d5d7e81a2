#pragma once

#include <random>

#include "seqexp/seqexp.hpp"

namespace seqexp::testing {

/// Fills the interior of a field with uniform values in [lo, hi); ghosts stay zero.
inline void randomize(Field& f, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    f.for_interior([&](int i, int j, int k) { f(i, j, k) = d(rng); });
}

inline MaxwellState2D random_maxwell(MaxwellSchemeId id, const Grid& grid, std::mt19937_64& rng) {
    MaxwellState2D s = MaxwellState2D::zeros(id, grid);
    randomize(s.Bz, rng);
    randomize(s.Ex, rng);
    randomize(s.Ey, rng);
    return s;
}

/// Largest interior |a - b|.
inline double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    a.for_interior([&](int i, int j, int k) { m = std::max(m, std::abs(a(i, j, k) - b(i, j, k))); });
    return m;
}

inline double max_diff(const MaxwellState2D& a, const MaxwellState2D& b) {
    return std::max({max_diff(a.Bz, b.Bz), max_diff(a.Ex, b.Ex), max_diff(a.Ey, b.Ey)});
}

/// The scheme whose E-update operator a sequential scheme shares.
inline MaxwellSchemeId gradient_scheme(MaxwellSchemeId id) {
    return id == MaxwellSchemeId::YeeCollocatedExplicit ? MaxwellSchemeId::YeeCollocated : id;
}

/// (Dx psi, Dy psi) with the difference operators of the scheme's curl, so
/// the result lies in the curl's kernel. psi must have its ghosts filled and
/// the B layout of the scheme.
inline std::pair<Field, Field> curl_kernel(MaxwellSchemeId id, const Field& psi, const Grid& g) {
    const auto& in = info(id);
    Field ex(g, in.ex), ey(g, in.ey);
    const double dx = g.dx, dy = g.dy;
    ex.for_interior([&](int i, int j, int) {
        const Field& q = psi;
        switch (id) {
            case MaxwellSchemeId::YeeCollocatedExtended:
            case MaxwellSchemeId::YeeExtendedStaggered:
                ex(i, j) = (q(i + 1, j + 1) - q(i, j + 1) + q(i + 1, j) - q(i, j)) / (2.0 * dx);
                ey(i, j) = (q(i + 1, j + 1) - q(i + 1, j) + q(i, j + 1) - q(i, j)) / (2.0 * dy);
                break;
            case MaxwellSchemeId::Central:
                ex(i, j) = (q(i + 1, j) - q(i - 1, j)) / (2.0 * dx);
                ey(i, j) = (q(i, j + 1) - q(i, j - 1)) / (2.0 * dy);
                break;
            case MaxwellSchemeId::CentralExtended:
                ex(i, j) = (seqexp::detail::avy(q, i + 1, j) - seqexp::detail::avy(q, i - 1, j)) / (2.0 * dx);
                ey(i, j) = (seqexp::detail::avx(q, i, j + 1) - seqexp::detail::avx(q, i, j - 1)) / (2.0 * dy);
                break;
            default:
                ex(i, j) = (q(i + 1, j) - q(i, j)) / dx;
                ey(i, j) = (q(i, j + 1) - q(i, j)) / dy;
                break;
        }
    });
    return {std::move(ex), std::move(ey)};
}

/// The 2D schemes that update B first and then E with the new B.
inline constexpr std::array<MaxwellSchemeId, 7> kSequential2D{
    MaxwellSchemeId::YeeOriginal,           MaxwellSchemeId::YeeCollocated,
    MaxwellSchemeId::YeeCollocatedExplicit, MaxwellSchemeId::YeeCollocatedExtended,
    MaxwellSchemeId::YeeExtendedStaggered,  MaxwellSchemeId::Central,
    MaxwellSchemeId::CentralExtended};

}  // namespace seqexp::testing
