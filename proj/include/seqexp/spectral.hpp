#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>
#include <vector>

#include "seqexp/acoustics.hpp"
#include "seqexp/maxwell.hpp"
#include "seqexp/polynomial.hpp"

namespace seqexp {

/// Dimensionless wavenumber beta = k h per axis, in [-pi, pi].
struct Wavenumber {
    double x = 0.0, y = 0.0, z = 0.0;

    cplx tx() const { return std::polar(1.0, x); }
    cplx ty() const { return std::polar(1.0, y); }
    cplx tz() const { return std::polar(1.0, z); }
};

/// Difference symbols of a sequential scheme: D acts on E in the B-update and
/// D' acts on B in the E-update.
struct SchemeSymbol {
    cplx Dx, Dpx, Dy, Dpy;
};

enum class SymbolFamily { yee, extended, central, central_extended };

inline SymbolFamily symbol_family(MaxwellSchemeId id) {
    switch (id) {
        case MaxwellSchemeId::YeeOriginal:
        case MaxwellSchemeId::YeeCollocated:
        case MaxwellSchemeId::YeeCollocatedExplicit: return SymbolFamily::yee;
        case MaxwellSchemeId::YeeCollocatedExtended:
        case MaxwellSchemeId::YeeExtendedStaggered: return SymbolFamily::extended;
        case MaxwellSchemeId::Central: return SymbolFamily::central;
        case MaxwellSchemeId::CentralExtended: return SymbolFamily::central_extended;
        default: break;
    }
    throw ConfigError("scheme has no registered sequential symbol set");
}

inline SchemeSymbol symbols(SymbolFamily fam, const Wavenumber& b, double dx = 1.0, double dy = 1.0) {
    const cplx tx = b.tx(), ty = b.ty();
    switch (fam) {
        case SymbolFamily::yee:
            return {(tx - 1.0) / dx, (tx - 1.0) / (tx * dx), (ty - 1.0) / dy, (ty - 1.0) / (ty * dy)};
        case SymbolFamily::extended:
            return {(tx - 1.0) / dx * (ty + 1.0) / 2.0, (tx - 1.0) / (tx * dx) * (ty + 1.0) / (2.0 * ty),
                    (ty - 1.0) / dy * (tx + 1.0) / 2.0, (ty - 1.0) / (ty * dy) * (tx + 1.0) / (2.0 * tx)};
        case SymbolFamily::central: {
            const cplx cx = (tx * tx - 1.0) / (2.0 * tx * dx), cy = (ty * ty - 1.0) / (2.0 * ty * dy);
            return {cx, cx, cy, cy};
        }
        case SymbolFamily::central_extended: {
            const cplx cx = (tx * tx - 1.0) / (2.0 * tx * dx) * (ty + 1.0) * (ty + 1.0) / (4.0 * ty);
            const cplx cy = (ty * ty - 1.0) / (2.0 * ty * dy) * (tx + 1.0) * (tx + 1.0) / (4.0 * tx);
            return {cx, cx, cy, cy};
        }
    }
    return {};
}

/// Amplification matrix of a sequential scheme in (B, Ex, Ey) order.
inline Eigen::Matrix3cd sequential_matrix(const SchemeSymbol& s, double dt) {
    Eigen::Matrix3cd A;
    A << 1.0, dt * s.Dy, -dt * s.Dx,                                    //
        dt * s.Dpy, 1.0 + dt * dt * s.Dy * s.Dpy, -dt * dt * s.Dx * s.Dpy,  //
        -dt * s.Dpx, -dt * dt * s.Dy * s.Dpx, 1.0 + dt * dt * s.Dx * s.Dpx;
    return A;
}

/// Amplification matrix of a 2D Maxwell scheme with dx = dy = 1 and dt = ratio.
/// Rows and columns are ordered (Bz, Ex, Ey).
inline Eigen::MatrixXcd amplification_matrix(MaxwellSchemeId id, const Wavenumber& b, double ratio) {
    const double dt = ratio;
    if (id == MaxwellSchemeId::YeeExtended3D) {
        const cplx tx = b.tx(), ty = b.ty(), tz = b.tz();
        // forward (node <- cell) and backward (cell <- node) extended differences
        const cplx ax = (tx + 1.0) / 2.0, ay = (ty + 1.0) / 2.0, az = (tz + 1.0) / 2.0;
        const cplx bx = (tx + 1.0) / (2.0 * tx), by = (ty + 1.0) / (2.0 * ty), bz = (tz + 1.0) / (2.0 * tz);
        const cplx D[3] = {(tx - 1.0) * ay * az, (ty - 1.0) * ax * az, (tz - 1.0) * ax * ay};
        const cplx Dp[3] = {(tx - 1.0) / tx * by * bz, (ty - 1.0) / ty * bx * bz, (tz - 1.0) / tz * bx * by};
        // curl matrices: (curl_D E)_a = eps_abc D_b E_c
        Eigen::Matrix3cd C = Eigen::Matrix3cd::Zero(), Cp = Eigen::Matrix3cd::Zero();
        C(0, 2) = D[1], C(0, 1) = -D[2], C(1, 0) = D[2], C(1, 2) = -D[0], C(2, 1) = D[0], C(2, 0) = -D[1];
        Cp(0, 2) = Dp[1], Cp(0, 1) = -Dp[2], Cp(1, 0) = Dp[2], Cp(1, 2) = -Dp[0], Cp(2, 1) = Dp[0],
        Cp(2, 0) = -Dp[1];
        // B' = B - dt C E ; E' = E + dt Cp B'. State order (Bx, By, Bz, Ex, Ey, Ez).
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(6, 6);
        A.block<3, 3>(0, 3) = -dt * C;
        A.block<3, 3>(3, 0) = dt * Cp;
        A.block<3, 3>(3, 3) = Eigen::Matrix3cd::Identity() - dt * dt * Cp * C;
        return A;
    }
    if (id == MaxwellSchemeId::UpwindSplit || id == MaxwellSchemeId::StatPresReference) {
        const cplx tx = b.tx(), ty = b.ty();
        const cplx d2x = tx - 2.0 + 1.0 / tx, d2y = ty - 2.0 + 1.0 / ty;
        const cplx cx = (tx - 1.0 / tx) / 2.0, cy = (ty - 1.0 / ty) / 2.0;
        Eigen::Matrix3cd L;
        if (id == MaxwellSchemeId::UpwindSplit) {
            L << 0.5 * d2x + 0.5 * d2y, cy, -cx,  //
                cy, 0.5 * d2y, 0.0,                //
                -cx, 0.0, 0.5 * d2x;
        } else {
            const cplx ax = (tx + 2.0 + 1.0 / tx) / 4.0, ay = (ty + 2.0 + 1.0 / ty) / 4.0;
            L << 0.5 * ay * d2x + 0.5 * ax * d2y, ax * cy, -ay * cx,                   //
                ax * cy, 0.5 * ax * d2y, -0.5 * cx * cy,  //
                -ay * cx, -0.5 * cx * cy, 0.5 * ay * d2x;
        }
        return Eigen::Matrix3cd::Identity() + dt * L;
    }
    return sequential_matrix(symbols(symbol_family(id), b), dt);
}

inline SymbolFamily symbol_family(AcousticSchemeId id) {
    switch (id) {
        case AcousticSchemeId::YeeOriginal: return SymbolFamily::yee;
        case AcousticSchemeId::YeeCollocatedExtended: return SymbolFamily::extended;
        case AcousticSchemeId::CentralExtended: return SymbolFamily::central_extended;
    }
    return SymbolFamily::yee;
}

/// Acoustic amplification matrix in (u, v, p) order for dx = dy = 1.
inline Eigen::MatrixXcd amplification_matrix(AcousticSchemeId id, const Wavenumber& b, double ratio, double c = 1.0,
                                             double eps = 1.0) {
    const SchemeSymbol s = symbols(symbol_family(id), b);
    const double dt = ratio, c2 = c * c, ie2 = 1.0 / (eps * eps);
    Eigen::Matrix3cd A;
    // p' = p - dt c^2 (Dx u + Dy v); u' = u - dt/eps^2 D'x p'; v' = v - dt/eps^2 D'y p'
    A << 1.0 + dt * dt * c2 * ie2 * s.Dpx * s.Dx, dt * dt * c2 * ie2 * s.Dpx * s.Dy, -dt * ie2 * s.Dpx,  //
        dt * dt * c2 * ie2 * s.Dpy * s.Dx, 1.0 + dt * dt * c2 * ie2 * s.Dpy * s.Dy, -dt * ie2 * s.Dpy,  //
        -dt * c2 * s.Dx, -dt * c2 * s.Dy, 1.0;
    return A;
}

/// Spectral radius from the Schur form of the matrix itself. Repeated
/// eigenvalues of non-defective matrices stay well conditioned this way.
inline double spectral_radius(const Eigen::MatrixXcd& A) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Spectral radius as the largest root modulus of the characteristic polynomial.
inline double spectral_radius_charpoly(const Eigen::MatrixXcd& A) {
    double r = 0.0;
    for (const cplx& z : roots(characteristic_polynomial(A))) r = std::max(r, std::abs(z));
    return r;
}

/// Growth-rate estimate ||A^k v||^{1/k} from normalized power iteration.
inline double spectral_radius_power(const Eigen::MatrixXcd& A, int iters = 2000) {
    Eigen::VectorXcd v(A.rows());
    for (int i = 0; i < v.size(); ++i) v(i) = cplx(1.0 + 0.37 * i, 0.11 * (i + 1));
    v.normalize();
    double log_growth = 0.0;
    for (int k = 0; k < iters; ++k) {
        v = A * v;
        const double n = v.norm();
        if (n == 0.0) return 0.0;
        log_growth += std::log(n);
        v /= n;
    }
    return std::exp(log_growth / iters);
}

/// Uniform samples of [-pi, pi] (endpoints included) plus 0 and +-pi/2.
inline std::vector<double> beta_samples(int n) {
    std::vector<double> b;
    for (int k = 0; k < n; ++k) b.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * k / (n - 1));
    for (double extra : {0.0, std::numbers::pi / 2, -std::numbers::pi / 2})
        if (std::none_of(b.begin(), b.end(), [&](double v) { return std::abs(v - extra) < 1e-15; }))
            b.push_back(extra);
    std::sort(b.begin(), b.end());
    return b;
}

namespace detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers; returns false as soon
// as any call returns false.
template <class F>
bool parallel_all(long n, int threads, F&& fn) {
    threads = std::max(1, threads);
    if (threads == 1) {
        for (long i = 0; i < n; ++i)
            if (!fn(i)) return false;
        return true;
    }
    std::atomic<bool> ok{true};
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (long i = next++; i < n && ok.load(std::memory_order_relaxed); i = next++)
                if (!fn(i)) ok = false;
        });
    for (auto& th : pool) th.join();
    return ok;
}

}  // namespace detail

/// True if the spectral radius is at most 1 + tol at every sampled wavenumber.
template <class MatrixFn>
bool stable_on_grid(MatrixFn&& matrix_at, int dims, int samples, double tol, int threads = 1) {
    const std::vector<double> b = beta_samples(samples);
    const long m = static_cast<long>(b.size());
    const long total = dims == 3 ? m * m * m : m * m;
    return detail::parallel_all(total, threads, [&](long q) {
        Wavenumber w{b[q % m], b[(q / m) % m], dims == 3 ? b[q / (m * m)] : 0.0};
        return spectral_radius(matrix_at(w)) <= 1.0 + tol;
    });
}

/// Largest stable ratio dt/dx by bisection over the sampled wavenumbers.
template <class MatrixFnOfRatio>
double bisect_stability(MatrixFnOfRatio&& matrix_at, int dims, int samples, double bisect_tol, double tol,
                        int threads = 1) {
    auto stable = [&](double r) {
        return stable_on_grid([&](const Wavenumber& w) { return matrix_at(w, r); }, dims, samples, tol, threads);
    };
    double lo = 0.0, hi = 0.5;
    while (stable(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) return INFINITY;
    }
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double cfl_max(MaxwellSchemeId id, int beta_samples_per_axis = 128, double bisect_tol = 1e-4,
                      int threads = 1) {
    const int dims = id == MaxwellSchemeId::YeeExtended3D ? 3 : 2;
    return bisect_stability([&](const Wavenumber& w, double r) { return amplification_matrix(id, w, r); }, dims,
                            beta_samples_per_axis, bisect_tol, 1e-10, threads);
}

inline double cfl_max(AcousticSchemeId id, int beta_samples_per_axis = 128, double bisect_tol = 1e-4,
                      int threads = 1) {
    return bisect_stability([&](const Wavenumber& w, double r) { return amplification_matrix(id, w, r); }, 2,
                            beta_samples_per_axis, bisect_tol, 1e-10, threads);
}

// ---------------------------------------------------------------------------
// Linearized Euler scheme

struct EulerBackground {
    double u = 0.0, v = 0.0, p = 1.0, rho = 1.0, gamma = 1.4;

    double energy() const { return p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v); }
    double sound_speed() const { return std::sqrt(gamma * p / rho); }
};

inline Eigen::Vector4d euler_flux(const EulerBackground& q, int axis) {
    const double e = q.energy();
    if (axis == 0) return {q.rho * q.u, q.rho * q.u * q.u + q.p, q.rho * q.u * q.v, q.u * (e + q.p)};
    return {q.rho * q.v, q.rho * q.u * q.v, q.rho * q.v * q.v + q.p, q.v * (e + q.p)};
}

/// Flux Jacobians in conserved variables (rho, mx, my, e).
inline Eigen::Matrix4d euler_jacobian(const EulerBackground& q, int axis) {
    const double g1 = q.gamma - 1.0, u = q.u, v = q.v;
    const double K = 0.5 * (u * u + v * v);
    const double H = (q.energy() + q.p) / q.rho;
    Eigen::Matrix4d J;
    if (axis == 0) {
        J << 0.0, 1.0, 0.0, 0.0,                                   //
            g1 * K - u * u, (3.0 - q.gamma) * u, -g1 * v, g1,       //
            -u * v, v, u, 0.0,                                      //
            u * (g1 * K - H), H - g1 * u * u, -g1 * u * v, q.gamma * u;
    } else {
        J << 0.0, 0.0, 1.0, 0.0,                                   //
            -u * v, v, u, 0.0,                                      //
            g1 * K - v * v, -g1 * u, (3.0 - q.gamma) * v, g1,       //
            v * (g1 * K - H), -g1 * u * v, H - g1 * v * v, q.gamma * v;
    }
    return J;
}

/// Fourier symbol of the linearized flux divergence (the right-hand side R
/// with q^{n+1} = q^n - dt R q).
inline Eigen::Matrix4cd euler_rhs_symbol(const EulerBackground& q, double dt, double dx, double dy,
                                         const Wavenumber& b) {
    const cplx tx = b.tx(), ty = b.ty();
    const cplx ssx = tx + 2.0 + 1.0 / tx, ssy = ty + 2.0 + 1.0 / ty;  // {{.}}
    const Eigen::RowVector4cd lu(-q.u / q.rho, 1.0 / q.rho, 0.0, 0.0);
    const Eigen::RowVector4cd lv(-q.v / q.rho, 0.0, 1.0 / q.rho, 0.0);
    const Eigen::Matrix4cd I = Eigen::Matrix4cd::Identity();

    // x-flux at i+1/2
    const Eigen::Matrix4cd Fx = euler_jacobian(q, 0).cast<cplx>() * ((tx + 1.0) * ssy / 8.0) -
                                0.5 * std::abs(q.u) * (tx - 1.0) * I -
                                dt * euler_flux(q, 0).cast<cplx>() *
                                    (lu * ((tx - 1.0) * ssy / (4.0 * dx)) +
                                     lv * ((tx + 1.0) * (ty - 1.0 / ty) / (4.0 * dy)));
    // y-flux at j+1/2
    const Eigen::Matrix4cd Fy = euler_jacobian(q, 1).cast<cplx>() * (ssx * (ty + 1.0) / 8.0) -
                                0.5 * std::abs(q.v) * (ty - 1.0) * I -
                                dt * euler_flux(q, 1).cast<cplx>() *
                                    (lu * ((tx - 1.0 / tx) * (ty + 1.0) / (4.0 * dx)) +
                                     lv * (ssx * (ty - 1.0) / (4.0 * dy)));
    return (1.0 - 1.0 / tx) / dx * Fx + (1.0 - 1.0 / ty) / dy * Fy;
}

/// Time structure of the linearized Euler step. The scheme itself is
/// sequential (momentum first, then density and energy with the new momentum);
/// the forward-Euler form applies the whole right-hand side at level n.
enum class EulerTimeStructure { sequential, forward_euler };

/// Amplification matrix of the linearized Euler scheme in (rho, mx, my, e) order.
inline Eigen::Matrix4cd euler_linearized_matrix(const EulerBackground& q, double dt, double dx, const Wavenumber& b,
                                                double dy = 0.0,
                                                EulerTimeStructure structure = EulerTimeStructure::sequential) {
    if (!(q.rho > 0.0)) throw ConfigError("background density must be positive");
    if (dy == 0.0) dy = dx;
    const Eigen::Matrix4cd R = euler_rhs_symbol(q, dt, dx, dy, b);
    const Eigen::Matrix4cd I = Eigen::Matrix4cd::Identity();
    if (structure == EulerTimeStructure::forward_euler) return I - dt * R;
    Eigen::Matrix4cd Pm = Eigen::Matrix4cd::Zero(), Pre = Eigen::Matrix4cd::Zero();
    Pm(1, 1) = Pm(2, 2) = 1.0;
    Pre(0, 0) = Pre(3, 3) = 1.0;
    return (I - dt * Pre * R) * (I - dt * Pm * R);
}

/// Miller's criterion on the characteristic polynomial at one wavenumber.
/// Near-multiple roots close to z = 1 make this ill-conditioned at small
/// |beta|; the map below therefore uses eigenvalue moduli.
inline bool euler_stable_at(const EulerBackground& q, double dt, double dx, const Wavenumber& b, double tol) {
    return schur_unit_disc(characteristic_polynomial(euler_linearized_matrix(q, dt, dx, b)), tol);
}

/// Fourfold eigenvalue of the forward-Euler linearization at zero background
/// pressure (pure advection). The flux Jacobians then share the single
/// eigenvalue u or v, and the denominator term is a rank-one update along the
/// background state, which leaves the spectrum unchanged.
inline cplx euler_advective_root(double u, double v, double dt, double dx, const Wavenumber& b) {
    const double au = std::abs(u), av = std::abs(v);
    const double cx = std::cos(b.x), cy = std::cos(b.y);
    const double re = (2.0 * (au + av) * dt - 2.0 * dx - 2.0 * dt * (au * cx + av * cy)) / (2.0 * dx);
    const double im = dt * (u * (1.0 + cy) * std::sin(b.x) + v * (1.0 + cx) * std::sin(b.y)) / (2.0 * dx);
    return -cplx(re, im);
}

/// The proposed closed-form bound dt/dx < 1 / (|u| + |v| + c sqrt(2/gamma)).
inline double euler_proposed_ratio(double u, double v, double c, double gamma) {
    return 1.0 / (std::abs(u) + std::abs(v) + c * std::sqrt(2.0 / gamma));
}

struct EulerMapRow {
    double u, v, dt_max, dt_formula;
};

struct EulerMapOptions {
    double beta_step = 0.05;  // spacing of the wavenumber samples
    double dt_tol = 1e-3;     // bisection tolerance on dt (dx = 1)
    double tol = 1e-8;        // unit-circle tolerance
    int threads = 1;
};

/// Largest stable dt (dx = dy = 1) for one background state: the spectral
/// radius of the sequential amplification matrix must stay below 1 + tol at
/// every sampled wavenumber.
inline double euler_max_dt(const EulerBackground& q, const EulerMapOptions& opt) {
    const int n = std::max(3, static_cast<int>(std::lround(2.0 * std::numbers::pi / opt.beta_step)) + 1);
    const std::vector<double> b = beta_samples(n);
    // conj symmetry: A(-beta) = conj(A(beta)), so beta_y >= 0 suffices
    std::vector<Wavenumber> ws;
    for (double by : b)
        if (by >= 0.0)
            for (double bx : b) ws.push_back({bx, by, 0.0});
    // check the grid corners first: they bound most regimes
    std::stable_partition(ws.begin(), ws.end(), [](const Wavenumber& w) {
        return std::abs(std::abs(w.x) - std::numbers::pi) < 1e-12 || std::abs(std::abs(w.y) - std::numbers::pi) < 1e-12;
    });
    auto stable = [&](double dt) {
        return detail::parallel_all(static_cast<long>(ws.size()), opt.threads,
                                    [&](long k) {
                                        return spectral_radius(euler_linearized_matrix(q, dt, 1.0, ws[k])) <=
                                               1.0 + opt.tol;
                                    });
    };
    double lo = 0.0, hi = 0.25;
    while (stable(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) return INFINITY;
    }
    while (hi - lo > opt.dt_tol) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return lo;
}

/// Largest dt with |advective root| <= 1 + tol over the sampled wavenumbers,
/// i.e. the pure-advection branch of the stability bound.
inline double euler_advective_max_dt(double u, double v, const EulerMapOptions& opt) {
    const int n = std::max(3, static_cast<int>(std::lround(2.0 * std::numbers::pi / opt.beta_step)) + 1);
    const std::vector<double> b = beta_samples(n);
    auto stable = [&](double dt) {
        for (double by : b)
            for (double bx : b)
                if (std::abs(euler_advective_root(u, v, dt, 1.0, {bx, by})) > 1.0 + opt.tol) return false;
        return true;
    };
    double lo = 0.0, hi = 0.25;
    while (stable(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) return INFINITY;
    }
    while (hi - lo > opt.dt_tol * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return lo;
}

/// Stability map over a rectangle of background velocities.
inline std::vector<EulerMapRow> euler_max_dt_map(const std::vector<double>& us, const std::vector<double>& vs,
                                                 double cbar, double gamma, const EulerMapOptions& opt) {
    std::vector<EulerMapRow> rows;
    for (double v : vs)
        for (double u : us) {
            EulerBackground q;
            q.u = u;
            q.v = v;
            q.rho = 1.0;
            q.gamma = gamma;
            q.p = cbar * cbar * q.rho / gamma;
            rows.push_back({u, v, euler_max_dt(q, opt), euler_proposed_ratio(u, v, cbar, gamma)});
        }
    return rows;
}

}  // namespace seqexp
