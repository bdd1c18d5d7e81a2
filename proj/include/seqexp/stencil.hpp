#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqexp/field.hpp"

namespace seqexp {

/// Single-axis bracket operators.
///
/// jump_half and sum_half are the half-step operators [q] and {q}. On a field
/// with integer parity they read (i, i+1) and produce a half-shifted value; on
/// a half-shifted field they read (i-1/2, i+1/2) and land back on the integer
/// position. jump_wide is [q]_{i+-1}; double_jump and double_sum are [[q]] and {{q}}.
enum class BracketOp { jump_half, jump_wide, sum_half, double_jump, double_sum };

struct BracketTerm {
    int axis;
    BracketOp op;
};

/// A composite bracket expression. Terms are listed innermost first and the
/// evaluated result is divided by normalization.
struct BracketExpr {
    std::vector<BracketTerm> terms;
    double normalization = 1.0;

    BracketExpr& then(int axis, BracketOp op) {
        terms.push_back({axis, op});
        return *this;
    }
    BracketExpr& divide_by(double d) {
        normalization = d;
        return *this;
    }
};

namespace detail {

using Kernel1D = std::map<int, double>;  // offset -> weight

inline Kernel1D kernel_of(BracketOp op, int parity) {
    switch (op) {
        case BracketOp::jump_half: return parity == 0 ? Kernel1D{{0, -1.0}, {1, 1.0}} : Kernel1D{{-1, -1.0}, {0, 1.0}};
        case BracketOp::sum_half: return parity == 0 ? Kernel1D{{0, 1.0}, {1, 1.0}} : Kernel1D{{-1, 1.0}, {0, 1.0}};
        case BracketOp::jump_wide: return {{-1, -1.0}, {1, 1.0}};
        case BracketOp::double_jump: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
        case BracketOp::double_sum: return {{-1, 1.0}, {0, 2.0}, {1, 1.0}};
    }
    return {};
}

inline bool flips_parity(BracketOp op) { return op == BracketOp::jump_half || op == BracketOp::sum_half; }

inline Kernel1D convolve(const Kernel1D& a, const Kernel1D& b) {
    Kernel1D c;
    for (auto [sa, wa] : a)
        for (auto [sb, wb] : b) c[sa + sb] += wa * wb;
    return c;
}

inline void check_axis(const Field& f, int axis) {
    if (axis < 0 || axis >= f.dims()) throw ConfigError("bracket axis outside the field's dimensions");
}

}  // namespace detail

/// Per-axis tensor-product weights of an expression applied to a given stagger.
struct FusedStencil {
    std::array<detail::Kernel1D, 3> kernels;
    Stagger out_stagger{0, 0, 0};
};

inline FusedStencil fuse(const BracketExpr& expr, Stagger in) {
    FusedStencil fs;
    for (auto& k : fs.kernels) k = {{0, 1.0}};
    Stagger s = in;
    for (const BracketTerm& t : expr.terms) {
        fs.kernels[t.axis] = detail::convolve(fs.kernels[t.axis], detail::kernel_of(t.op, s[t.axis]));
        if (detail::flips_parity(t.op)) s[t.axis] ^= 1;
    }
    for (auto& k : fs.kernels)
        for (auto it = k.begin(); it != k.end();) it = it->second == 0.0 ? k.erase(it) : std::next(it);
    fs.out_stagger = s;
    return fs;
}

/// Evaluates a bracket expression as one fused gather per output value.
/// Ghost layers of the result are zero.
inline Field apply_bracket(const BracketExpr& expr, const Field& q, const Grid& grid) {
    for (const BracketTerm& t : expr.terms) detail::check_axis(q, t.axis);
    const FusedStencil fs = fuse(expr, q.stagger());
    for (int a = 0; a < 3; ++a)
        for (auto [off, w] : fs.kernels[a])
            if (std::abs(off) > q.ghost(a))
                throw StencilReachError("bracket expression reaches " + std::to_string(std::abs(off)) +
                                        " cells on axis " + std::to_string(a) + " but the ghost width is " +
                                        std::to_string(q.ghost(a)));

    struct Tap {
        long offset;
        double weight;
    };
    std::vector<Tap> taps;
    for (auto [oz, wz] : fs.kernels[2])
        for (auto [oy, wy] : fs.kernels[1])
            for (auto [ox, wx] : fs.kernels[0])
                taps.push_back({ox * q.stride(0) + oy * q.stride(1) + oz * q.stride(2), wx * wy * wz});

    Field out(grid, layout_of(fs.out_stagger, q.dims()));
    const double inv = 1.0 / expr.normalization;
    const double* src = q.ptr();
    double* dst = out.ptr();
    for (int k = 0; k < q.n(2); ++k)
        for (int j = 0; j < q.n(1); ++j) {
            const long row = q.index(0, j, k);
            for (int i = 0; i < q.n(0); ++i) {
                double acc = 0.0;
                for (const Tap& t : taps) acc += t.weight * src[row + i + t.offset];
                dst[row + i] = acc * inv;
            }
        }
    return out;
}

/// Reference evaluator: applies the terms one at a time with a temporary per
/// term, tracking the region that is still valid. Used as a test oracle.
inline Field apply_bracket_reference(const BracketExpr& expr, const Field& q, const Grid& grid) {
    Field cur = q;
    std::array<int, 3> lo{-q.ghost(0), -q.ghost(1), -q.ghost(2)};
    std::array<int, 3> hi{q.n(0) + q.ghost(0) - 1, q.n(1) + q.ghost(1) - 1, q.n(2) + q.ghost(2) - 1};
    Stagger s = q.stagger();
    for (const BracketTerm& t : expr.terms) {
        detail::check_axis(q, t.axis);
        const detail::Kernel1D ker = detail::kernel_of(t.op, s[t.axis]);
        const int omin = ker.begin()->first, omax = ker.rbegin()->first;
        Stagger ns = s;
        if (detail::flips_parity(t.op)) ns[t.axis] ^= 1;
        Field next(grid, layout_of(ns, q.dims()));
        std::array<int, 3> nlo = lo, nhi = hi;
        nlo[t.axis] = lo[t.axis] - omin;
        nhi[t.axis] = hi[t.axis] - omax;
        const long stride = cur.stride(t.axis);
        for (int k = nlo[2]; k <= nhi[2]; ++k)
            for (int j = nlo[1]; j <= nhi[1]; ++j)
                for (int i = nlo[0]; i <= nhi[0]; ++i) {
                    const long c = cur.index(i, j, k);
                    double acc = 0.0;
                    for (auto [off, w] : ker) acc += w * cur.ptr()[c + off * stride];
                    next.ptr()[c] = acc;
                }
        cur = std::move(next);
        lo = nlo;
        hi = nhi;
        s = ns;
    }
    for (int a = 0; a < 3; ++a)
        if (lo[a] > 0 || hi[a] < q.n(a) - 1)
            throw StencilReachError("bracket expression does not fit in the ghost layers on axis " +
                                    std::to_string(a));
    Field out(grid, layout_of(s, q.dims()));
    cur.for_interior([&](int i, int j, int k) { out(i, j, k) = cur(i, j, k) / expr.normalization; });
    return out;
}

/// The averaging operator <q> = (q_{+1} + 2q + q_{-1})/4 along the given axis.
inline Field avg_perp(const Field& q, const Grid& grid, int axis) {
    return apply_bracket(BracketExpr{}.then(axis, BracketOp::double_sum).divide_by(4.0), q, grid);
}

}  // namespace seqexp
