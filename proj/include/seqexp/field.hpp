#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

#include "seqexp/error.hpp"
#include "seqexp/grid.hpp"

namespace seqexp {

/// Scalar values over a grid with inline ghost layers, x fastest.
///
/// Storage index i runs over [-g, n+g). The physical position of index i is
/// origin + (i + 1/2 + s/2) h, where s is the layout parity on that axis.
class Field {
public:
    Field() = default;

    Field(const Grid& grid, Layout layout, double value = 0.0)
        : layout_(layout),
          dims_(grid.dims()),
          n_{grid.nx, grid.ny, grid.nz},
          g_{grid.ghost, grid.ghost, grid.ghost_z()} {
        sx_ = n_[0] + 2 * g_[0];
        sy_ = n_[1] + 2 * g_[1];
        sz_ = n_[2] + 2 * g_[2];
        data_.assign(static_cast<std::size_t>(sx_) * sy_ * sz_, value);
    }

    Layout layout() const { return layout_; }
    Stagger stagger() const { return stagger_of(layout_, dims_); }
    int dims() const { return dims_; }
    int n(int axis) const { return n_[axis]; }
    int ghost(int axis) const { return g_[axis]; }
    long stride(int axis) const { return axis == 0 ? 1L : axis == 1 ? sx_ : static_cast<long>(sx_) * sy_; }

    long index(int i, int j, int k = 0) const {
        return (i + g_[0]) + static_cast<long>(sx_) * ((j + g_[1]) + static_cast<long>(sy_) * (k + g_[2]));
    }
    double& operator()(int i, int j, int k = 0) { return data_[index(i, j, k)]; }
    double operator()(int i, int j, int k = 0) const { return data_[index(i, j, k)]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }
    double* ptr() { return data_.data(); }
    const double* ptr() const { return data_.data(); }

    bool same_shape(const Field& o) const {
        return n_ == o.n_ && g_ == o.g_ && dims_ == o.dims_;
    }

    /// Visits every interior index in storage order.
    template <class F>
    void for_interior(F&& fn) const {
        for (int k = 0; k < n_[2]; ++k)
            for (int j = 0; j < n_[1]; ++j)
                for (int i = 0; i < n_[0]; ++i) fn(i, j, k);
    }

    double interior_sum() const {
        double s = 0.0;
        for_interior([&](int i, int j, int k) { s += (*this)(i, j, k); });
        return s;
    }

    double interior_max_abs() const {
        double m = 0.0;
        for_interior([&](int i, int j, int k) { m = std::max(m, std::abs((*this)(i, j, k))); });
        return m;
    }

    double interior_min() const {
        double m = INFINITY;
        for_interior([&](int i, int j, int k) { m = std::min(m, (*this)(i, j, k)); });
        return m;
    }

    double interior_max() const {
        double m = -INFINITY;
        for_interior([&](int i, int j, int k) { m = std::max(m, (*this)(i, j, k)); });
        return m;
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
    }

    /// this += a * other, over the full storage.
    void axpy(double a, const Field& other) {
        for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += a * other.data_[q];
    }

    void scale(double a) {
        for (double& v : data_) v *= a;
    }

private:
    Layout layout_ = Layout::cell;
    int dims_ = 2;
    std::array<int, 3> n_{1, 1, 1};
    std::array<int, 3> g_{0, 0, 0};
    int sx_ = 1, sy_ = 1, sz_ = 1;
    std::vector<double> data_;
};

/// Physical coordinate of storage index idx along an axis for a layout parity.
inline double coordinate(const Grid& grid, int axis, int idx, int parity) {
    return grid.origin[axis] + (idx + 0.5 + 0.5 * parity) * grid.h(axis);
}

/// Samples fn at the layout's positions, ghost layers included.
template <class Fn>
Field init_from(Fn&& fn, const Grid& grid, Layout layout) {
    Field f(grid, layout);
    const Stagger s = f.stagger();
    const int gx = f.ghost(0), gy = f.ghost(1), gz = f.ghost(2);
    for (int k = -gz; k < grid.nz + gz; ++k)
        for (int j = -gy; j < grid.ny + gy; ++j)
            for (int i = -gx; i < grid.nx + gx; ++i) {
                const double x = coordinate(grid, 0, i, s[0]);
                const double y = coordinate(grid, 1, j, s[1]);
                if constexpr (std::is_invocable_v<Fn, double, double, double>) {
                    const double z = grid.dims() == 3 ? coordinate(grid, 2, k, s[2]) : 0.0;
                    f(i, j, k) = fn(x, y, z);
                } else {
                    f(i, j, k) = fn(x, y);
                }
            }
    return f;
}

/// Populates ghost layers axis by axis (x, then y, then z) so that corner
/// ghosts are consistent. Interior values are never written.
///
/// reflect_sign is the factor applied to mirrored values on reflective axes;
/// pass -1 on the axis normal to a velocity component.
inline void fill_ghosts(Field& f, const Grid& grid, const Field* frozen_snapshot = nullptr,
                        std::array<double, 3> reflect_sign = {1.0, 1.0, 1.0}) {
    const Stagger st = f.stagger();
    const int dims = grid.dims();
    std::array<int, 3> lo{0, 0, 0}, hi{f.n(0), f.n(1), f.n(2)};
    for (int axis = 0; axis < dims; ++axis) {
        const int g = f.ghost(axis);
        if (g == 0) continue;
        const int n = f.n(axis);
        const BoundaryKind kind = grid.bc[axis];
        if (kind == BoundaryKind::frozen) {
            if (!frozen_snapshot) throw ConfigError("frozen boundary requires a snapshot field");
            if (!frozen_snapshot->same_shape(f)) throw ConfigError("frozen snapshot has a different shape");
        }
        if (kind == BoundaryKind::reflective && st[axis] != 0)
            throw ConfigError("reflective boundaries are only defined for cell-parity fields");
        const long stride = f.stride(axis);
        std::array<int, 3> a = lo, b = hi;
        a[axis] = 0;
        b[axis] = 1;
        double* d = f.ptr();
        for (int k = a[2]; k < b[2]; ++k)
            for (int j = a[1]; j < b[1]; ++j)
                for (int i = a[0]; i < b[0]; ++i) {
                    const long base = f.index(i, j, k);  // index 0 along the axis
                    for (int m = 1; m <= g; ++m) {
                        const long left = base - m * stride;
                        const long right = base + (n - 1 + m) * stride;
                        switch (kind) {
                            case BoundaryKind::periodic:
                                d[left] = d[base + (n - m) * stride];
                                d[right] = d[base + (m - 1) * stride];
                                break;
                            case BoundaryKind::frozen:
                                d[left] = frozen_snapshot->ptr()[left];
                                d[right] = frozen_snapshot->ptr()[right];
                                break;
                            case BoundaryKind::reflective:
                                d[left] = reflect_sign[axis] * d[base + (m - 1) * stride];
                                d[right] = reflect_sign[axis] * d[base + (n - m) * stride];
                                break;
                        }
                    }
                }
        lo[axis] = -g;
        hi[axis] = n + g;
    }
#ifndef NDEBUG
    if (!f.all_finite()) throw Error("non-finite value after ghost fill");
#endif
}

}  // namespace seqexp
