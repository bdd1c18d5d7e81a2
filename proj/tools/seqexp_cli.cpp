#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "seqexp/driver.hpp"

namespace {

struct Flags {
    std::optional<std::string> scheme, case_name, out, config, family, grids, machs;
    std::optional<int> nx, ny, threads, snapshots;
    std::optional<double> cfl, t_end, mach;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "flat key=value configuration file");
    sub->add_option("--scheme", f.scheme, "scheme name (see README), or 'euler'");
    sub->add_option("--family", f.family, "maxwell | acoustic | euler");
    sub->add_option("--case", f.case_name, "test case name (see the cases subcommand)");
    sub->add_option("--nx", f.nx, "cells in x");
    sub->add_option("--ny", f.ny, "cells in y");
    sub->add_option("--cfl", f.cfl, "CFL number");
    sub->add_option("--t-end", f.t_end, "final time");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--threads", f.threads, "worker threads (0: all, capped by SEQEXP_THREADS)");
    sub->add_option("--snapshots", f.snapshots, "intermediate VTK snapshots for run");
    sub->add_option("--mach", f.mach, "vortex Mach number");
    sub->add_option("--grids", f.grids, "comma-separated grid sizes for convergence");
    sub->add_option("--machs", f.machs, "comma-separated Mach numbers for lowmach");
}

// Flags override the config file, key by key.
void apply_flags(seqexp::RunConfig& c, const Flags& f) {
    auto set = [&](const char* key, const char* flag, const auto& v) {
        if (!v) return;
        if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>)
            seqexp::apply_setting(c, key, *v, flag);
        else {
            std::ostringstream os;
            os.precision(17);
            os << *v;
            seqexp::apply_setting(c, key, os.str(), flag);
        }
    };
    set("family", "--family", f.family);
    set("scheme", "--scheme", f.scheme);
    set("case", "--case", f.case_name);
    set("nx", "--nx", f.nx);
    set("ny", "--ny", f.ny);
    set("cfl", "--cfl", f.cfl);
    set("t_end", "--t-end", f.t_end);
    set("out", "--out", f.out);
    set("threads", "--threads", f.threads);
    set("snapshots", "--snapshots", f.snapshots);
    set("mach", "--mach", f.mach);
    set("grids", "--grids", f.grids);
    set("machs", "--machs", f.machs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential explicit schemes for Maxwell, acoustics and Euler: batch driver"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char*, const char*> subs[] = {
        {"run", "time integration of one case with snapshots"},
        {"stability", "CFL_max table of a scheme family, or the Euler stability map"},
        {"convergence", "smooth-vortex refinement study"},
        {"lowmach", "divergence and pressure-gradient time series over Mach numbers"},
        {"cases", "list the available cases"},
    };
    for (const auto& [name, help] : subs) add_flags(app.add_subcommand(name, help), flags);
    CLI11_PARSE(app, argc, argv);

    try {
        seqexp::RunConfig cfg;
        const std::string cmd = app.get_subcommands().front()->get_name();
        cfg.command = cmd == "run"           ? seqexp::Command::run
                      : cmd == "stability"   ? seqexp::Command::stability
                      : cmd == "convergence" ? seqexp::Command::convergence
                      : cmd == "lowmach"     ? seqexp::Command::lowmach
                                             : seqexp::Command::cases;
        if (flags.config) seqexp::parse_config_file(cfg, *flags.config);
        apply_flags(cfg, flags);
        seqexp::finalize(cfg);
        return seqexp::run(cfg, std::cerr);
    } catch (const seqexp::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const seqexp::Error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
