#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "seqexp/cases.hpp"

namespace seqexp {

/// (1/N) sum |a_i - b_i| over the interior.
inline double l1_error(const Field& a, const Field& b) {
    if (!a.same_shape(b)) throw ConfigError("l1_error: fields have different shapes");
    double sum = 0.0;
    long n = 0;
    a.for_interior([&](int i, int j, int k) {
        sum += std::abs(a(i, j, k) - b(i, j, k));
        ++n;
    });
    return sum / static_cast<double>(n);
}

/// (1/N) sum |a_i - ref(x_i, y_i)| with the reference sampled at the field's positions.
template <class Ref>
double l1_error(const Field& a, const Grid& grid, Ref&& ref) {
    return l1_error(a, init_from(ref, grid, a.layout()));
}

/// sum |a - b| / sum |b|.
inline double relative_l1(const Field& a, const Field& b) {
    if (!a.same_shape(b)) throw ConfigError("relative_l1: fields have different shapes");
    double num = 0.0, den = 0.0;
    a.for_interior([&](int i, int j, int k) {
        num += std::abs(a(i, j, k) - b(i, j, k));
        den += std::abs(b(i, j, k));
    });
    if (den == 0.0) throw ConfigError("relative_l1: reference field is zero");
    return num / den;
}

/// Least-squares slope of log(error) against log(h).
inline double convergence_rate(const std::vector<double>& hs, const std::vector<double>& errors) {
    if (hs.size() != errors.size()) throw ConfigError("convergence_rate: mismatched lengths");
    if (hs.size() < 3) throw ConfigError("convergence_rate needs at least three refinement levels");
    const double n = static_cast<double>(hs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        if (!(hs[k] > 0.0) || !(errors[k] > 0.0)) throw ConfigError("convergence_rate: values must be positive");
        const double x = std::log(hs[k]), y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Shock tubes

struct ProfileRow {
    double x;
    double rho, u, p;
    double rho_exact, u_exact, p_exact;
};

struct ShockTubeResult {
    CaseKind kind;
    Grid grid;
    ConservedState state;
    long steps = 0;
    double t_end = 0.0;
    std::vector<ProfileRow> profile;  // along the first row of cells
    double l1_rho = 0.0;
};

inline ShockTubeResult run_shock_tube(CaseKind kind, int nx, double cfl, double t_end, int threads = 1) {
    if (!is_shock_tube(kind)) throw ConfigError(std::string(info(kind).name) + " is not a shock tube");
    ShockTubeResult r{kind, case_grid(kind, nx, 2), {}, 0, t_end, {}, 0.0};
    r.state = build_case({kind}, r.grid);
    const ConservedState frozen = r.state;
    r.steps = integrate(r.state, r.grid, cfl, t_end, EulerBoundary{&frozen}, EulerOptions{0.1, threads});

    const RiemannProblem rp = riemann_problem(kind, r.state.gamma);
    const PrimitiveState w = cons_to_prim(r.state);
    double err = 0.0;
    for (int i = 0; i < r.grid.nx; ++i) {
        const double x = coordinate(r.grid, 0, i, 0);
        const Primitive1D ex = t_end > 0.0 ? exact_riemann(rp, (x - 0.5) / t_end) : (x < 0.5 ? rp.left : rp.right);
        r.profile.push_back({x, w.rho(i, 0), w.u(i, 0), w.p(i, 0), ex.rho, ex.u, ex.p});
        err += std::abs(w.rho(i, 0) - ex.rho);
    }
    r.l1_rho = err / r.grid.nx;
    return r;
}

/// Largest density increase between neighbouring cells inside the left
/// rarefaction fan (widened by `pad` cells), relative to the fan amplitude.
/// Zero or negative means the computed fan decreases monotonically, as the
/// exact one does.
inline double rarefaction_overshoot(const ShockTubeResult& r, int pad = 5) {
    const RiemannProblem rp = riemann_problem(r.kind, r.state.gamma);
    const RiemannStar st = solve_star(rp);
    if (st.p > rp.left.p) throw ConfigError("left wave is not a rarefaction");
    const RiemannWaves wv = wave_speeds(rp);
    const double xa = 0.5 + wv.left_head * r.t_end - pad * r.grid.dx;
    const double xb = 0.5 + wv.left_tail * r.t_end + pad * r.grid.dx;
    const double amplitude = rp.left.rho - st.rho_left;
    double worst = -INFINITY;
    for (std::size_t k = 0; k + 1 < r.profile.size(); ++k) {
        if (r.profile[k].x < xa || r.profile[k + 1].x > xb) continue;
        worst = std::max(worst, (r.profile[k + 1].rho - r.profile[k].rho) / amplitude);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Smooth vortex convergence

struct ConvergenceRow {
    int n;
    double h;
    long steps;
    std::array<double, 4> error;  // l1 of rho, mx, my, e against the initial data
};

inline ConvergenceRow smooth_vortex_error(int n, double mach, double t_end, double cfl, int threads = 1) {
    const Grid grid = case_grid(CaseKind::SmoothVortex, n, n);
    ConservedState s = build_case({CaseKind::SmoothVortex, mach}, grid);
    const ConservedState initial = s;
    ConvergenceRow row{n, grid.dx, 0, {}};
    row.steps = integrate(s, grid, cfl, t_end, EulerBoundary{&initial}, EulerOptions{0.1, threads});
    for (int k = 0; k < 4; ++k) row.error[k] = l1_error(s[k], initial[k]);
    return row;
}

inline std::array<double, 4> convergence_rates(const std::vector<ConvergenceRow>& rows) {
    std::array<double, 4> rates{};
    std::vector<double> hs;
    for (const auto& r : rows) hs.push_back(r.h);
    for (int k = 0; k < 4; ++k) {
        std::vector<double> e;
        for (const auto& r : rows) e.push_back(r.error[k]);
        rates[k] = convergence_rate(hs, e);
    }
    return rates;
}

// ---------------------------------------------------------------------------
// Low Mach number behaviour of the vortex

struct LowMachSample {
    double t;
    double divergence;         // (1/N) sum |node divergence|
    double pressure_gradient;  // (1/N) sum |[M^2 p]_{i+-1}| / 2
};

struct LowMachRun {
    double mach = 0.0;
    std::vector<LowMachSample> series;
    ConservedState final_state;
    Grid grid;
    long steps = 0;

    /// Mean over the samples with t > 0.
    double mean_divergence() const { return mean(&LowMachSample::divergence); }
    double mean_pressure_gradient() const { return mean(&LowMachSample::pressure_gradient); }

private:
    double mean(double LowMachSample::*m) const {
        double s = 0.0;
        int n = 0;
        for (const auto& x : series)
            if (x.t > 0.0) {
                s += x.*m;
                ++n;
            }
        return n ? s / n : 0.0;
    }
};

inline LowMachSample lowmach_sample(ConservedState s, const Grid& grid, double t, double mach,
                                    const EulerBoundary& bnd = {}) {
    fill_ghosts(s, grid, bnd);
    const PrimitiveState w = cons_to_prim(s);
    const Field div = node_divergence(w, grid);
    double d = 0.0;
    div.for_interior([&](int i, int j, int) { d += std::abs(div(i, j)); });
    return {t, d / static_cast<double>(grid.cells()), rescaled_pressure_gradient_norm(w, mach)};
}

/// Runs the vortex case to t_end and samples the norms `samples` times at
/// evenly spaced instants (the first step at or beyond each instant).
inline LowMachRun lowmach_timeseries(double mach, int n, double cfl, double t_end, int samples = 50,
                                     CaseKind kind = CaseKind::GreshoVortex, int threads = 1) {
    LowMachRun run;
    run.mach = mach;
    run.grid = case_grid(kind, n, n);
    ConservedState s = build_case({kind, mach}, run.grid);
    const ConservedState initial = s;
    const EulerBoundary bnd{&initial};
    run.series.push_back(lowmach_sample(s, run.grid, 0.0, mach, bnd));
    int next = 1;
    run.steps = integrate(s, run.grid, cfl, t_end, bnd, EulerOptions{0.1, threads},
                          [&](const ConservedState& cur, double t, long) {
                              if (samples > 0 && t >= t_end * next / samples * (1.0 - 1e-12)) {
                                  run.series.push_back(lowmach_sample(cur, run.grid, t, mach, bnd));
                                  while (next <= samples && t >= t_end * next / samples * (1.0 - 1e-12)) ++next;
                              }
                          });
    run.final_state = std::move(s);
    return run;
}

/// Relative l1 distance between the local Mach number fields divided by M.
inline double mach_independence(const LowMachRun& a, const LowMachRun& b) {
    Field ma = mach_field(a.final_state), mb = mach_field(b.final_state);
    ma.scale(1.0 / a.mach);
    mb.scale(1.0 / b.mach);
    return relative_l1(ma, mb);
}

// ---------------------------------------------------------------------------
// Kelvin-Helmholtz smoke run

struct KhResult {
    long steps = 0;
    double rho_min = 0.0, rho_max = 0.0;
    bool finite = false;
    ConservedState state;
    Grid grid;
};

inline KhResult run_kelvin_helmholtz(int nx, int ny, double cfl, double t_end, int threads = 1) {
    KhResult r;
    r.grid = case_grid(CaseKind::KelvinHelmholtz, nx, ny);
    r.state = build_case({CaseKind::KelvinHelmholtz}, r.grid);
    const ConservedState initial = r.state;
    r.steps = integrate(r.state, r.grid, cfl, t_end, EulerBoundary{&initial}, EulerOptions{0.1, threads});
    r.rho_min = r.state.rho.interior_min();
    r.rho_max = r.state.rho.interior_max();
    r.finite = r.state.rho.all_finite() && r.state.mx.all_finite() && r.state.my.all_finite() &&
               r.state.e.all_finite();
    return r;
}

}  // namespace seqexp
