#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqexp/acoustics.hpp"
#include "seqexp/cases.hpp"
#include "seqexp/maxwell.hpp"

namespace seqexp {

enum class Command { run, stability, convergence, lowmach, cases };
enum class Family { maxwell, acoustic, euler };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::run: return "run";
        case Command::stability: return "stability";
        case Command::convergence: return "convergence";
        case Command::lowmach: return "lowmach";
        case Command::cases: return "cases";
    }
    return "?";
}

inline const char* to_string(Family f) {
    switch (f) {
        case Family::maxwell: return "maxwell";
        case Family::acoustic: return "acoustic";
        case Family::euler: return "euler";
    }
    return "?";
}

/// Everything a batch run needs. Zero / empty / nullopt entries are filled in
/// by finalize() from the scheme and case defaults.
struct RunConfig {
    Command command = Command::run;
    std::optional<Family> family;
    std::string scheme;
    std::string case_name;
    int nx = 0, ny = 0;
    std::optional<double> cfl;
    std::optional<double> t_end;
    std::string out = "out";
    int threads = 0;  // 0: all hardware threads, capped by SEQEXP_THREADS
    int snapshots = 0;  // intermediate VTK snapshots for `run`
    std::optional<double> mach;  // vortex cases
    double gamma = 1.4;

    // stability sweeps
    int beta_samples = 128;
    int beta_samples_3d = 48;
    double bisect_tol = 1e-4;
    double beta_step = 0.05;  // Euler map
    int map_samples = 9;      // per velocity axis
    double map_umax = 1.0;
    double map_cbar = 1.0;

    // studies
    std::vector<int> grids{25, 50, 100, 200};
    std::vector<double> machs{1e-1, 1e-2, 1e-3};
    int series_samples = 50;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double to_double(const std::string& v, const std::string& where, const std::string& key) {
    double x = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e || !std::isfinite(x))
        throw ConfigError(where + ": " + key + " expects a number, got '" + v + "'");
    return x;
}

inline int to_int(const std::string& v, const std::string& where, const std::string& key) {
    int x = 0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e) throw ConfigError(where + ": " + key + " expects an integer, got '" + v + "'");
    return x;
}

template <class T, class Conv>
std::vector<T> to_list(const std::string& v, const std::string& where, const std::string& key, Conv conv) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(conv(trim(item), where, key));
    if (out.empty()) throw ConfigError(where + ": " + key + " expects a comma-separated list");
    return out;
}

inline void require(bool ok, const std::string& where, const std::string& msg) {
    if (!ok) throw ConfigError(where + ": " + msg);
}

}  // namespace detail

/// Keys accepted in config files (flags use the same names with '-' for '_').
inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "family",     "scheme",      "case",       "nx",           "ny",        "cfl",      "t_end",
        "out",        "threads",     "snapshots",  "mach",         "gamma",     "beta_samples",
        "beta_samples_3d", "bisect_tol", "beta_step", "map_samples", "map_umax", "map_cbar", "grids",
        "machs",      "series_samples"};
    return keys;
}

/// Applies one key=value setting; `where` locates it for error messages.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value, const std::string& where) {
    using namespace detail;
    if (key == "family") {
        if (value == "maxwell") c.family = Family::maxwell;
        else if (value == "acoustic") c.family = Family::acoustic;
        else if (value == "euler") c.family = Family::euler;
        else throw ConfigError(where + ": unknown family '" + value + "' (maxwell, acoustic, euler)");
    } else if (key == "scheme") {
        require(!value.empty(), where, "scheme must not be empty");
        c.scheme = value;
    } else if (key == "case") {
        require(!value.empty(), where, "case must not be empty");
        c.case_name = value;
    } else if (key == "nx") {
        c.nx = to_int(value, where, key);
        require(c.nx >= 2, where, "nx must be at least 2");
    } else if (key == "ny") {
        c.ny = to_int(value, where, key);
        require(c.ny >= 2, where, "ny must be at least 2");
    } else if (key == "cfl") {
        c.cfl = to_double(value, where, key);
        require(*c.cfl > 0.0, where, "cfl must be positive");
    } else if (key == "t_end") {
        c.t_end = to_double(value, where, key);
        require(*c.t_end >= 0.0, where, "t_end must be non-negative");
    } else if (key == "out") {
        require(!value.empty(), where, "out must not be empty");
        c.out = value;
    } else if (key == "threads") {
        c.threads = to_int(value, where, key);
        require(c.threads >= 0, where, "threads must be non-negative");
    } else if (key == "snapshots") {
        c.snapshots = to_int(value, where, key);
        require(c.snapshots >= 0, where, "snapshots must be non-negative");
    } else if (key == "mach") {
        c.mach = to_double(value, where, key);
        require(*c.mach > 0.0, where, "mach must be positive");
    } else if (key == "gamma") {
        c.gamma = to_double(value, where, key);
        require(c.gamma > 1.0, where, "gamma must exceed 1");
    } else if (key == "beta_samples") {
        c.beta_samples = to_int(value, where, key);
        require(c.beta_samples >= 8, where, "beta_samples must be at least 8");
    } else if (key == "beta_samples_3d") {
        c.beta_samples_3d = to_int(value, where, key);
        require(c.beta_samples_3d >= 8, where, "beta_samples_3d must be at least 8");
    } else if (key == "bisect_tol") {
        c.bisect_tol = to_double(value, where, key);
        require(c.bisect_tol > 0.0, where, "bisect_tol must be positive");
    } else if (key == "beta_step") {
        c.beta_step = to_double(value, where, key);
        require(c.beta_step > 0.0 && c.beta_step < 1.0, where, "beta_step must lie in (0, 1)");
    } else if (key == "map_samples") {
        c.map_samples = to_int(value, where, key);
        require(c.map_samples >= 1, where, "map_samples must be positive");
    } else if (key == "map_umax") {
        c.map_umax = to_double(value, where, key);
        require(c.map_umax >= 0.0, where, "map_umax must be non-negative");
    } else if (key == "map_cbar") {
        c.map_cbar = to_double(value, where, key);
        require(c.map_cbar > 0.0, where, "map_cbar must be positive");
    } else if (key == "grids") {
        c.grids = to_list<int>(value, where, key, to_int);
        for (int n : c.grids) require(n >= 2, where, "grid sizes must be at least 2");
    } else if (key == "machs") {
        c.machs = to_list<double>(value, where, key, to_double);
        for (double m : c.machs) require(m > 0.0, where, "Mach numbers must be positive");
    } else if (key == "series_samples") {
        c.series_samples = to_int(value, where, key);
        require(c.series_samples >= 1, where, "series_samples must be positive");
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

/// Parses flat `key = value` text. Blank lines and lines starting with '#'
/// are ignored; `source` names the input in error messages.
inline void parse_config_text(RunConfig& c, const std::string& text, const std::string& source = "config") {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + t + "'");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": missing key");
        apply_setting(c, key, value, where);
    }
}

inline void parse_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    parse_config_text(c, buf.str(), path);
}

/// Fills in defaults and checks cross-field consistency.
inline void finalize(RunConfig& c) {
    if (!c.family) {
        if (c.scheme == "euler" || (!c.case_name.empty() && case_from_name(c.case_name)) ||
            c.command == Command::convergence || c.command == Command::lowmach)
            c.family = Family::euler;
        else c.family = Family::maxwell;
    }
    const Family f = *c.family;
    if (f == Family::euler) {
        if (c.scheme.empty()) c.scheme = "euler";
        if (c.scheme != "euler") throw ConfigError("scheme '" + c.scheme + "' is not an Euler scheme (use euler)");
        if (c.case_name.empty())
            c.case_name = c.command == Command::convergence ? "smooth-vortex"
                          : c.command == Command::lowmach   ? "gresho"
                                                            : "sod";
        const auto k = case_from_name(c.case_name);
        if (!k) throw ConfigError("unknown case '" + c.case_name + "'");
        const CaseInfo& ci = info(*k);
        if (c.nx == 0) c.nx = ci.nx;
        if (c.ny == 0) c.ny = is_shock_tube(*k) ? 2 : ci.ny;
        if (!c.cfl) c.cfl = ci.cfl;
        if (!c.t_end) c.t_end = ci.t_end;
        if (!c.mach) c.mach = *k == CaseKind::SmoothVortex ? 0.3 : 0.1;
    } else {
        if (c.scheme.empty()) c.scheme = "yee-original";
        double table = 0.0;
        if (f == Family::maxwell) {
            const auto id = maxwell_scheme_from_name(c.scheme);
            if (!id) throw ConfigError("unknown Maxwell scheme '" + c.scheme + "'");
            table = info(*id).cfl_max;
        } else {
            const auto id = acoustic_scheme_from_name(c.scheme == "yee" ? "yee-original" : c.scheme);
            if (!id) throw ConfigError("unknown acoustic scheme '" + c.scheme + "'");
            table = info(*id).cfl_max;
        }
        if (c.case_name.empty()) c.case_name = "plane-wave";
        if (c.case_name != "plane-wave")
            throw ConfigError("case '" + c.case_name + "' is not available for the " + to_string(f) + " family");
        if (c.nx == 0) c.nx = 64;
        if (c.ny == 0) c.ny = 64;
        if (!c.cfl) c.cfl = 0.9 * table;
        if (!c.t_end) c.t_end = 1.0;
    }
    if (!(*c.cfl > 0.0)) throw ConfigError("cfl must be positive");
    if (!(*c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
    if (c.nx < 2 || c.ny < 2) throw ConfigError("grid sizes must be at least 2");
}

/// Settings echoed into output metadata, in a fixed order. The thread count
/// is left out because results do not depend on it.
inline std::vector<std::pair<std::string, std::string>> echo(const RunConfig& c) {
    auto num = [](double x) {  // shortest round-trip form
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, r.ptr);
    };
    std::vector<std::pair<std::string, std::string>> e{
        {"command", to_string(c.command)},
        {"family", c.family ? to_string(*c.family) : ""},
        {"scheme", c.scheme},
        {"case", c.case_name},
        {"nx", std::to_string(c.nx)},
        {"ny", std::to_string(c.ny)},
        {"cfl", c.cfl ? num(*c.cfl) : ""},
        {"t_end", c.t_end ? num(*c.t_end) : ""},
        {"gamma", num(c.gamma)},
    };
    if (c.family == Family::euler && c.mach) e.emplace_back("mach", num(*c.mach));
    return e;
}

}  // namespace seqexp
