#pragma once

#include <cmath>
#include <iostream>
#include <string>

#include "seqexp/acoustics.hpp"
#include "seqexp/config.hpp"
#include "seqexp/diagnostics.hpp"
#include "seqexp/io.hpp"
#include "seqexp/spectral.hpp"

namespace seqexp {

namespace detail {

inline io::Metadata metadata(const RunConfig& c, io::Metadata extra = {}) {
    io::Metadata m = echo(c);
    for (auto& e : extra) m.push_back(std::move(e));
    return m;
}

inline std::string pad3(int k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", k);
    return buf;
}

// ---------------------------------------------------------------------------

inline void write_euler_vtk(io::ArtifactWriter& w, const std::string& name, const std::string& title,
                            ConservedState s, const Grid& grid) {
    const PrimitiveState p = cons_to_prim(s);
    const Field mach = mach_field(s);
    w.write_vtk(name, title, grid,
                {{"rho", &p.rho}, {"u", &p.u}, {"v", &p.v}, {"p", &p.p}, {"mach", &mach}});
}

inline int run_euler(const RunConfig& c, io::ArtifactWriter& w, std::ostream& log) {
    const CaseKind kind = *case_from_name(c.case_name);
    const Grid grid = case_grid(kind, c.nx, c.ny);
    CaseOptions copt;
    copt.gamma = c.gamma;
    ConservedState s = build_case({kind, c.mach.value_or(0.1)}, grid, copt);
    const ConservedState initial = s;
    const EulerBoundary bnd{&initial};
    const EulerOptions opt{0.1, resolve_threads(c.threads)};
    const double t_end = *c.t_end;
    const std::string base = "run_" + c.case_name;

    write_euler_vtk(w, base + "_initial.vtk", c.case_name + " t=0", s, grid);

    io::CsvTable hist({"t", "step", "mass", "momentum_x", "momentum_y", "energy", "rho_min", "rho_max", "max_mach"});
    auto record = [&](const ConservedState& st, double t, long n) {
        const Vec4 tot = conserved_totals(st, grid);
        hist.add_row({t, static_cast<double>(n), tot[0], tot[1], tot[2], tot[3], st.rho.interior_min(),
                      st.rho.interior_max(), max_mach(st)});
    };
    record(s, 0.0, 0);

    const int history_points = 200;
    int next_hist = 1, next_snap = 1;
    long steps = 0;
    if (t_end > 0.0) {
        steps = integrate(s, grid, *c.cfl, t_end, bnd, opt, [&](const ConservedState& st, double t, long n) {
            const double eps = 1.0 - 1e-12;
            if (t >= t_end * next_hist / history_points * eps) {
                record(st, t, n);
                while (t >= t_end * next_hist / history_points * eps) ++next_hist;
            }
            if (c.snapshots > 0 && next_snap <= c.snapshots && t >= t_end * next_snap / (c.snapshots + 1) * eps) {
                write_euler_vtk(w, base + "_snap_" + pad3(next_snap) + ".vtk",
                                c.case_name + " t=" + io::fmt(t), st, grid);
                while (next_snap <= c.snapshots && t >= t_end * next_snap / (c.snapshots + 1) * eps) ++next_snap;
            }
        });
        write_euler_vtk(w, base + "_final.vtk", c.case_name + " t=" + io::fmt(t_end), s, grid);
    }
    log << "euler " << c.case_name << ": " << steps << " steps to t=" << t_end << '\n';

    const io::Metadata meta = metadata(c, {{"steps", std::to_string(steps)}});
    w.write_csv(base + "_history.csv", hist, meta);
    w.write_plot(base + "_history.plt", {c.case_name + ": density range", "t", "rho", false, false,
                                         {{base + "_history.csv", 1, 7, "rho min"},
                                          {base + "_history.csv", 1, 8, "rho max"}}});

    if (is_shock_tube(kind)) {
        const RiemannProblem rp = riemann_problem(kind, c.gamma);
        const PrimitiveState p = cons_to_prim(s);
        io::CsvTable prof({"x", "rho", "u", "p", "rho_exact", "u_exact", "p_exact"});
        double err = 0.0;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = coordinate(grid, 0, i, 0);
            const Primitive1D ex = t_end > 0.0 ? exact_riemann(rp, (x - 0.5) / t_end) : (x < 0.5 ? rp.left : rp.right);
            prof.add_row({x, p.rho(i, 0), p.u(i, 0), p.p(i, 0), ex.rho, ex.u, ex.p});
            err += std::abs(p.rho(i, 0) - ex.rho);
        }
        io::Metadata m = meta;
        m.emplace_back("l1_rho", io::fmt(err / grid.nx));
        w.write_csv(base + "_profile.csv", prof, m);
        const std::string f = base + "_profile.csv";
        w.write_plot(base + "_profile.plt", {c.case_name + " at t=" + io::fmt(t_end), "x", "", false, false,
                                             {{f, 1, 2, "rho", "points pt 7 ps 0.3"},
                                              {f, 1, 5, "rho exact"},
                                              {f, 1, 3, "u", "points pt 7 ps 0.3"},
                                              {f, 1, 6, "u exact"},
                                              {f, 1, 4, "p", "points pt 7 ps 0.3"},
                                              {f, 1, 7, "p exact"}}});
    }
    return 0;
}

inline int run_wave(const RunConfig& c, io::ArtifactWriter& w, std::ostream& log) {
    const Grid grid = Grid::make_2d(c.nx, c.ny, 1.0, 1.0 * c.ny / c.nx);
    const double t_end = *c.t_end;
    const double dt_full = *c.cfl * std::min(grid.dx, grid.dy);
    const long nsteps = t_end > 0.0 ? static_cast<long>(std::ceil(t_end / dt_full - 1e-12)) : 0;
    const double dt = nsteps > 0 ? t_end / nsteps : dt_full;
    const std::string base = "run_" + c.scheme;
    io::CsvTable hist({"t", "step", "l2_norm", "involution_max"});

    if (*c.family == Family::maxwell) {
        const MaxwellSchemeId id = *maxwell_scheme_from_name(c.scheme);
        if (id == MaxwellSchemeId::YeeExtended3D) throw ConfigError("run supports the 2D Maxwell schemes only");
        MaxwellState2D s = maxwell_plane_wave(id, grid);
        auto rec = [&](long n) {
            const auto inv = discrete_involution(id, s, grid);
            hist.add_row({n * dt, static_cast<double>(n), l2_norm(s, grid), inv ? inv->interior_max_abs() : NAN});
        };
        rec(0);
        for (long n = 1; n <= nsteps; ++n) {
            advance(id, s, grid, dt);
            rec(n);
        }
        for (auto [name, f] : {std::pair<const char*, const Field*>{"Bz", &s.Bz}, {"Ex", &s.Ex}, {"Ey", &s.Ey}})
            w.write_vtk(base + "_" + name + ".vtk", std::string(name) + " t=" + io::fmt(nsteps * dt), grid,
                        {{name, f}});
    } else {
        const AcousticSchemeId id = *acoustic_scheme_from_name(c.scheme == "yee" ? "yee-original" : c.scheme);
        AcousticState s = from_maxwell(maxwell_plane_wave(info(id).maxwell, grid));
        auto rec = [&](long n) {
            const Field vort = acoustic_vorticity(id, s, grid);
            hist.add_row({n * dt, static_cast<double>(n), l2_norm(to_maxwell(s), grid),
                          vort.interior_max_abs()});
        };
        rec(0);
        for (long n = 1; n <= nsteps; ++n) {
            advance(id, s, grid, dt);
            rec(n);
        }
        for (auto [name, f] : {std::pair<const char*, const Field*>{"u", &s.u}, {"v", &s.v}, {"p", &s.p}})
            w.write_vtk(base + "_" + name + ".vtk", std::string(name) + " t=" + io::fmt(nsteps * dt), grid,
                        {{name, f}});
    }
    log << to_string(*c.family) << ' ' << c.scheme << ": " << nsteps << " steps, dt=" << dt << '\n';
    w.write_csv(base + "_history.csv", hist, metadata(c, {{"dt", io::fmt(dt)}}));
    w.write_plot(base + "_history.plt", {c.scheme + ": invariants", "t", "", false, false,
                                         {{base + "_history.csv", 1, 3, "l2 norm"},
                                          {base + "_history.csv", 1, 4, "involution (max abs)"}}});
    return 0;
}

// ---------------------------------------------------------------------------

inline int stability(const RunConfig& c, io::ArtifactWriter& w, std::ostream& log) {
    const int threads = resolve_threads(c.threads);
    const Family f = *c.family;
    if (f == Family::euler) {
        std::vector<double> us;
        const int n = c.map_samples;
        for (int k = 0; k < n; ++k) us.push_back(n == 1 ? 0.0 : -c.map_umax + 2.0 * c.map_umax * k / (n - 1));
        EulerMapOptions opt;
        opt.beta_step = c.beta_step;
        opt.threads = threads;
        const auto rows = euler_max_dt_map(us, us, c.map_cbar, c.gamma, opt);
        io::CsvTable t({"u", "v", "dt_max", "dt_formula", "relative_deviation"});
        double worst = 0.0;
        for (const auto& r : rows) {
            const double dev = (r.dt_max - r.dt_formula) / r.dt_formula;
            worst = std::max(worst, std::abs(dev));
            t.add_row({r.u, r.v, r.dt_max, r.dt_formula, dev});
        }
        log << "euler map: " << rows.size() << " backgrounds, worst deviation from the formula " << worst << '\n';
        w.write_csv("stability_euler_map.csv", t,
                    metadata(c, {{"cbar", io::fmt(c.map_cbar)},
                                 {"beta_step", io::fmt(c.beta_step)},
                                 {"max_abs_relative_deviation", io::fmt(worst)}}));
        w.write_plot("stability_euler_map.plt", {"max dt/dx over the (u, v) samples", "u", "dt/dx", false, false,
                                                 {{"stability_euler_map.csv", 1, 3, "numerical", "points pt 7"},
                                                  {"stability_euler_map.csv", 1, 4, "formula", "points pt 6"}}});
        return 0;
    }
    io::CsvTable t({"scheme", "cfl_max", "cfl_reference", "beta_samples"});
    auto row = [&](const char* name, double cfl, double ref, int samples) {
        log << name << ": " << cfl << " (reference " << ref << ")\n";
        t.add_row_text({name, io::fmt(cfl), io::fmt(ref), std::to_string(samples)});
    };
    if (f == Family::maxwell) {
        for (const auto& s : kMaxwellSchemes) {
            const int samples = s.id == MaxwellSchemeId::YeeExtended3D ? c.beta_samples_3d : c.beta_samples;
            row(s.name, cfl_max(s.id, samples, c.bisect_tol, threads), s.cfl_max, samples);
        }
    } else {
        for (const auto& s : kAcousticSchemes) row(s.name, cfl_max(s.id, c.beta_samples, c.bisect_tol, threads), s.cfl_max, c.beta_samples);
    }
    const std::string name = std::string("stability_") + to_string(f) + ".csv";
    w.write_csv(name, t, metadata(c, {{"bisect_tol", io::fmt(c.bisect_tol)}}));
    return 0;
}

inline int convergence(const RunConfig& c, io::ArtifactWriter& w, std::ostream& log) {
    const int threads = resolve_threads(c.threads);
    std::vector<ConvergenceRow> rows;
    io::CsvTable t({"n", "h", "steps", "err_rho", "err_mx", "err_my", "err_e"});
    for (int n : c.grids) {
        rows.push_back(smooth_vortex_error(n, *c.mach, *c.t_end, *c.cfl, threads));
        const auto& r = rows.back();
        log << "grid " << n << ": l1(rho) = " << r.error[0] << '\n';
        t.add_row({static_cast<double>(n), r.h, static_cast<double>(r.steps), r.error[0], r.error[1], r.error[2],
                   r.error[3]});
    }
    io::Metadata extra;
    if (rows.size() >= 3) {
        const auto rates = convergence_rates(rows);
        const char* names[] = {"rate_rho", "rate_mx", "rate_my", "rate_e"};
        for (int k = 0; k < 4; ++k) {
            extra.emplace_back(names[k], io::fmt(rates[k]));
            log << names[k] << " = " << rates[k] << '\n';
        }
    }
    w.write_csv("convergence.csv", t, metadata(c, extra));
    w.write_plot("convergence.plt", {"l1 error against the initial data", "h", "error", true, true,
                                     {{"convergence.csv", 2, 4, "rho", "linespoints"},
                                      {"convergence.csv", 2, 5, "m_x", "linespoints"},
                                      {"convergence.csv", 2, 6, "m_y", "linespoints"},
                                      {"convergence.csv", 2, 7, "e", "linespoints"}}});
    return 0;
}

inline int lowmach(const RunConfig& c, io::ArtifactWriter& w, std::ostream& log) {
    const int threads = resolve_threads(c.threads);
    const CaseKind kind = *case_from_name(c.case_name);
    if (kind != CaseKind::GreshoVortex && kind != CaseKind::SmoothVortex)
        throw ConfigError("lowmach needs a vortex case (gresho or smooth-vortex)");
    std::vector<LowMachRun> runs;
    io::CsvTable summary({"mach", "steps", "mean_divergence", "mean_pressure_gradient"});
    io::PlotSpec pd{"node divergence, l1", "t", "", false, true, {}}, pp{"rescaled pressure gradient, l1", "t", "", false, true, {}};
    for (std::size_t k = 0; k < c.machs.size(); ++k) {
        const double m = c.machs[k];
        runs.push_back(lowmach_timeseries(m, c.nx, *c.cfl, *c.t_end, c.series_samples, kind, threads));
        const LowMachRun& r = runs.back();
        io::CsvTable t({"t", "divergence", "pressure_gradient"});
        for (const auto& s : r.series) t.add_row({s.t, s.divergence, s.pressure_gradient});
        const std::string name = "lowmach_" + std::to_string(k) + ".csv";
        w.write_csv(name, t, metadata(c, {{"run_mach", io::fmt(m)}}));
        pd.series.push_back({name, 1, 2, "M = " + io::fmt(m)});
        pp.series.push_back({name, 1, 3, "M = " + io::fmt(m)});
        summary.add_row({m, static_cast<double>(r.steps), r.mean_divergence(), r.mean_pressure_gradient()});
        log << "M = " << m << ": mean divergence " << r.mean_divergence() << ", mean pressure gradient "
            << r.mean_pressure_gradient() << '\n';
    }
    io::Metadata extra;
    if (runs.size() >= 2) {
        const double d = mach_independence(runs.front(), runs.back());
        extra.emplace_back("mach_field_relative_l1_first_last", io::fmt(d));
        log << "relative l1 distance of the Mach-normalized fields: " << d << '\n';
    }
    w.write_csv("lowmach_summary.csv", summary, metadata(c, extra));
    w.write_plot("lowmach_divergence.plt", pd);
    w.write_plot("lowmach_pressure.plt", pp);
    for (std::size_t k = 0; k < runs.size(); ++k)
        write_euler_vtk(w, "lowmach_" + std::to_string(k) + "_final.vtk",
                        "M=" + io::fmt(runs[k].mach) + " t=" + io::fmt(*c.t_end), runs[k].final_state, runs[k].grid);
    return 0;
}

inline int list_cases(const RunConfig& c, io::ArtifactWriter& w, std::ostream& out) {
    io::CsvTable t({"case", "lx", "ly", "nx", "ny", "t_end", "cfl", "description"});
    for (const auto& k : kCases) {
        t.add_row_text({k.name, io::fmt(k.lx), io::fmt(k.ly), std::to_string(k.nx),
                        std::to_string(is_shock_tube(k.kind) ? 2 : k.ny), io::fmt(k.t_end), io::fmt(k.cfl),
                        std::string("\"") + k.description + "\""});
        out << k.name << "\t" << k.description << '\n';
    }
    out << "plane-wave\tplane wave for the maxwell and acoustic families\n";
    w.write_csv("cases.csv", t, metadata(c));
    return 0;
}

}  // namespace detail

/// Runs a finalized configuration, writing artifacts and a manifest into c.out.
inline int run(const RunConfig& c, std::ostream& log = std::cerr) {
    io::ArtifactWriter w(c.out);
    int status = 0;
    switch (c.command) {
        case Command::run:
            status = *c.family == Family::euler ? detail::run_euler(c, w, log) : detail::run_wave(c, w, log);
            break;
        case Command::stability: status = detail::stability(c, w, log); break;
        case Command::convergence: status = detail::convergence(c, w, log); break;
        case Command::lowmach: status = detail::lowmach(c, w, log); break;
        case Command::cases: status = detail::list_cases(c, w, std::cout); break;
    }
    const auto m = w.write_manifest();
    log << "wrote " << w.entries().size() << " files and " << m.string() << '\n';
    return status;
}

}  // namespace seqexp
