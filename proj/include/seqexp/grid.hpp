#pragma once

#include <array>
#include <string>

#include "seqexp/error.hpp"

namespace seqexp {

enum class BoundaryKind { periodic, frozen, reflective };

inline const char* to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::periodic: return "periodic";
        case BoundaryKind::frozen: return "frozen";
        case BoundaryKind::reflective: return "reflective";
    }
    return "?";
}

/// Where a field's degrees of freedom sit inside a cell.
///
/// Half-shifts are stored as a parity per axis. A parity of 1 means the value
/// with storage index i lives at i+1/2 in cell units. An edge_x value sits on
/// an edge parallel to x; a face_x value sits on a face normal to x.
enum class Layout { cell, node, edge_x, edge_y, edge_z, face_x, face_y, face_z };

using Stagger = std::array<int, 3>;

inline Stagger stagger_of(Layout l, int dims) {
    const int z = dims == 3 ? 1 : 0;
    switch (l) {
        case Layout::cell: return {0, 0, 0};
        case Layout::node: return {1, 1, z};
        case Layout::edge_x: return {0, 1, z};
        case Layout::edge_y: return {1, 0, z};
        case Layout::edge_z: return {1, 1, 0};
        case Layout::face_x: return {1, 0, 0};
        case Layout::face_y: return {0, 1, 0};
        case Layout::face_z: return {0, 0, z};
    }
    return {0, 0, 0};
}

inline Layout layout_of(const Stagger& s, int dims) {
    constexpr Layout order[] = {Layout::cell,   Layout::node,   Layout::edge_x, Layout::edge_y,
                                Layout::edge_z, Layout::face_x, Layout::face_y, Layout::face_z};
    for (Layout l : order)
        if (stagger_of(l, dims) == s) return l;
    throw ConfigError("no layout with the requested stagger");
}

inline const char* to_string(Layout l) {
    switch (l) {
        case Layout::cell: return "cell";
        case Layout::node: return "node";
        case Layout::edge_x: return "edge_x";
        case Layout::edge_y: return "edge_y";
        case Layout::edge_z: return "edge_z";
        case Layout::face_x: return "face_x";
        case Layout::face_y: return "face_y";
        case Layout::face_z: return "face_z";
    }
    return "?";
}

/// Uniform Cartesian grid. A 2D grid has nz == 1 and carries no ghost layers in z.
struct Grid {
    int nx = 1, ny = 1, nz = 1;
    double dx = 1.0, dy = 1.0, dz = 1.0;
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    int ghost = 1;
    std::array<BoundaryKind, 3> bc{BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::periodic};

    static Grid make_2d(int nx, int ny, double lx, double ly, BoundaryKind bx = BoundaryKind::periodic,
                        BoundaryKind by = BoundaryKind::periodic) {
        Grid g;
        g.nx = nx;
        g.ny = ny;
        g.dx = lx / nx;
        g.dy = ly / ny;
        g.bc = {bx, by, BoundaryKind::periodic};
        g.validate();
        return g;
    }

    static Grid make_3d(int nx, int ny, int nz, double lx, double ly, double lz) {
        Grid g;
        g.nx = nx;
        g.ny = ny;
        g.nz = nz;
        g.dx = lx / nx;
        g.dy = ly / ny;
        g.dz = lz / nz;
        g.validate();
        return g;
    }

    int dims() const { return nz > 1 ? 3 : 2; }
    int ghost_z() const { return nz > 1 ? ghost : 0; }
    int n(int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }
    double h(int axis) const { return axis == 0 ? dx : axis == 1 ? dy : dz; }
    int ghost_on(int axis) const { return axis == 2 ? ghost_z() : ghost; }
    long cells() const { return static_cast<long>(nx) * ny * nz; }
    double cell_volume() const { return dims() == 3 ? dx * dy * dz : dx * dy; }

    void validate() const {
        if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("grid cell counts must be positive");
        if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0)) throw ConfigError("grid spacings must be positive");
        if (ghost < 1) throw ConfigError("ghost width must be at least 1");
        for (int a = 0; a < dims(); ++a)
            if (ghost_on(a) > n(a)) throw ConfigError("ghost width exceeds the grid extent");
    }
};

}  // namespace seqexp
