#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqexp/field.hpp"

namespace seqexp::io {

inline constexpr const char* kVersion = "seqexp 1.0.0";

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Round-trip representation with 17 significant digits and '.' decimals.
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// A table with named columns, written as CSV after a '#' metadata block.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(const std::vector<double>& values) {
        if (values.size() != columns_.size()) throw ConfigError("CSV row width does not match the header");
        std::vector<std::string> r;
        for (double v : values) r.push_back(fmt(v));
        rows_.push_back(std::move(r));
    }

    /// Row with preformatted cells (for text columns).
    void add_row_text(std::vector<std::string> cells) {
        if (cells.size() != columns_.size()) throw ConfigError("CSV row width does not match the header");
        rows_.push_back(std::move(cells));
    }

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t size() const { return rows_.size(); }

    std::string to_string(const Metadata& meta) const {
        std::ostringstream os;
        os << "# " << kVersion << '\n';
        for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
        for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
        os << '\n';
        for (const auto& r : rows_) {
            for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
            os << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Legacy ASCII VTK STRUCTURED_POINTS for 2D fields sharing one layout. The
/// dataset origin is the position of storage index (0, 0) for that layout.
inline std::string vtk_string(const std::string& title, const Grid& grid,
                              const std::vector<std::pair<std::string, const Field*>>& fields) {
    if (fields.empty()) throw ConfigError("VTK output needs at least one field");
    const Layout layout = fields.front().second->layout();
    for (const auto& [name, f] : fields)
        if (f->layout() != layout) throw ConfigError("VTK fields must share a layout (" + name + ")");
    const Stagger st = fields.front().second->stagger();
    std::ostringstream os;
    os << "# vtk DataFile Version 3.0\n" << title << " (layout " << to_string(layout) << ")\nASCII\n";
    os << "DATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << grid.nx << ' ' << grid.ny << " 1\n";
    os << "ORIGIN " << fmt(coordinate(grid, 0, 0, st[0])) << ' ' << fmt(coordinate(grid, 1, 0, st[1])) << " 0\n";
    os << "SPACING " << fmt(grid.dx) << ' ' << fmt(grid.dy) << " 1\n";
    os << "POINT_DATA " << grid.nx * grid.ny << '\n';
    for (const auto& [name, f] : fields) {
        os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) os << fmt((*f)(i, j)) << '\n';
    }
    return os.str();
}

/// Hex SHA-256 of a byte string.
inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[md[k] >> 4];
        out += hex[md[k] & 15];
    }
    return out;
}

/// A line series for a generated gnuplot script.
struct PlotSeries {
    std::string data_file;
    int x_column;  // 1-based
    int y_column;
    std::string title;
    std::string style = "lines";
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool logx = false, logy = false;
    std::vector<PlotSeries> series;
};

inline std::string gnuplot_script(const PlotSpec& p, const std::string& png_name) {
    std::ostringstream os;
    os << "# generated by " << kVersion << "; run: gnuplot <this file>\n";
    os << "set datafile separator ','\n";
    os << "set datafile commentschars '#'\n";
    os << "set terminal pngcairo size 900,600\n";
    os << "set output '" << png_name << "'\n";
    os << "set title '" << p.title << "'\n";
    os << "set xlabel '" << p.xlabel << "'\nset ylabel '" << p.ylabel << "'\n";
    if (p.logx) os << "set logscale x\n";
    if (p.logy) os << "set logscale y\n";
    os << "set key outside right\n";
    os << "plot ";
    for (std::size_t k = 0; k < p.series.size(); ++k) {
        const auto& s = p.series[k];
        os << (k ? ", \\\n     " : "") << "'" << s.data_file << "' every ::1 using " << s.x_column << ':' << s.y_column
           << " with " << s.style << " title '" << s.title << "'";
    }
    os << '\n';
    return os.str();
}

/// Writes artifacts into one directory and records their checksums. Every
/// file goes through a single writer, in call order.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw ConfigError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path write(const std::string& name, const std::string& content) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        out << content;
        out.close();
        if (!out) throw Error("write failed for '" + path.string() + "'");
        entries_.emplace_back(name, sha256_hex(content));
        return path;
    }

    std::filesystem::path write_csv(const std::string& name, const CsvTable& t, const Metadata& meta) {
        return write(name, t.to_string(meta));
    }

    std::filesystem::path write_vtk(const std::string& name, const std::string& title, const Grid& grid,
                                    const std::vector<std::pair<std::string, const Field*>>& fields) {
        return write(name, vtk_string(title, grid, fields));
    }

    std::filesystem::path write_plot(const std::string& name, const PlotSpec& spec) {
        const std::string png = name.substr(0, name.rfind('.')) + ".png";
        return write(name, gnuplot_script(spec, png));
    }

    /// Writes MANIFEST.sha256 in `sha256sum -c` format and returns its path.
    std::filesystem::path write_manifest() {
        std::ostringstream os;
        for (const auto& [name, hash] : entries_) os << hash << "  " << name << '\n';
        const auto path = dir_ / "MANIFEST.sha256";
        std::ofstream out(path, std::ios::binary);
        out << os.str();
        if (!out) throw Error("cannot write manifest");
        return path;
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace seqexp::io
