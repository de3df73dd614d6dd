#include "lidarseg/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lidarseg/errors.hpp"

namespace lidarseg {

namespace {

bool parse_three_doubles(const std::string& text, char sep, double out[3]) {
    const char* p = text.c_str();
    for (int i = 0; i < 3; ++i) {
        char* end = nullptr;
        out[i] = std::strtod(p, &end);
        if (end == p) return false;
        p = end;
        if (i < 2) {
            while (*p == ' ' || *p == '\t') ++p;
            if (sep == ',') {
                if (*p != ',') return false;
                ++p;
            }
        }
    }
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    return sep == ',' ? *p == '\0' : true;
}

} // namespace

ScanFormat guess_format(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == "pcd") return ScanFormat::pcd_ascii;
    }
    return ScanFormat::csv;
}

ReadResult read_scan_csv(std::istream& in) {
    ReadResult res;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v[3];
        if (!parse_three_doubles(line, ',', v))
            throw ParseError(lineno, "expected 'x,y,z'");
        Point3 p{v[0], v[1], v[2]};
        if (!p.finite()) {
            ++res.dropped_nonfinite;
            continue;
        }
        res.cloud.push_back(p);
    }
    return res;
}

ReadResult read_scan_pcd(std::istream& in) {
    // ASCII PCD with x, y, z among FIELDS. Header keys up to `DATA`.
    std::string line;
    long lineno = 0;
    int ix = -1, iy = -1, iz = -1, nfields = 0;
    long expected_points = -1;
    bool data_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "FIELDS") {
            std::string f;
            for (int i = 0; ls >> f; ++i) {
                if (f == "x") ix = i;
                else if (f == "y") iy = i;
                else if (f == "z") iz = i;
                ++nfields;
            }
            if (ix < 0 || iy < 0 || iz < 0)
                throw ParseError(lineno, "FIELDS must include x y z");
        } else if (key == "POINTS") {
            ls >> expected_points;
        } else if (key == "DATA") {
            std::string mode;
            ls >> mode;
            if (mode != "ascii")
                throw ParseError(lineno, "only 'DATA ascii' is supported, got '" + mode + "'");
            data_seen = true;
            break;
        }
        // VERSION/SIZE/TYPE/COUNT/WIDTH/HEIGHT/VIEWPOINT carry nothing we need.
    }
    if (!data_seen)
        throw ParseError(lineno, "missing 'DATA ascii' header line");
    if (nfields == 0)
        throw ParseError(lineno, "missing FIELDS header line");

    ReadResult res;
    if (expected_points > 0) res.cloud.reserve(static_cast<std::size_t>(expected_points));
    std::vector<double> vals(nfields);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        for (int i = 0; i < nfields; ++i)
            if (!(ls >> vals[i]))
                throw ParseError(lineno, "expected " + std::to_string(nfields) + " fields");
        Point3 p{vals[ix], vals[iy], vals[iz]};
        if (!p.finite()) {
            ++res.dropped_nonfinite;
            continue;
        }
        res.cloud.push_back(p);
    }
    return res;
}

ReadResult read_scan(const std::string& path, ScanFormat format) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return format == ScanFormat::csv ? read_scan_csv(in) : read_scan_pcd(in);
}

PointCloud sliding_window(const std::vector<PointCloud>& clouds, int k) {
    if (k < 1)
        throw ConfigError("window_size", "must be >= 1");
    if (clouds.empty())
        throw ConfigError("window_size", "needs at least one cloud");
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), clouds.size());
    std::size_t first = clouds.size() - take;
    std::size_t total = 0;
    for (std::size_t i = first; i < clouds.size(); ++i) total += clouds[i].size();
    PointCloud out;
    out.reserve(total);
    for (std::size_t i = first; i < clouds.size(); ++i)
        out.insert(out.end(), clouds[i].begin(), clouds[i].end());
    return out;
}

std::string format_double(double v) {
    char buf[40];
    // Shortest representation that parses back to the same double.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void write_matrix(std::ostream& out, const Grid<double>& g) {
    out << g.rows() << ' ' << g.cols() << '\n';
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (c) out << ' ';
            out << format_double(g(r, c));
        }
        out << '\n';
    }
}

void write_matrix(std::ostream& out, const Grid<int>& g) {
    out << g.rows() << ' ' << g.cols() << '\n';
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (c) out << ' ';
            out << g(r, c);
        }
        out << '\n';
    }
}

Grid<double> read_matrix(std::istream& in) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw ParseError(1, "expected 'rows cols' header");
    Grid<double> g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (!(in >> g(r, c)))
                throw ParseError(r + 2, "matrix row truncated");
    return g;
}

namespace {
template <typename G>
void write_matrix_file_impl(const std::string& path, const G& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    write_matrix(out, g);
}
} // namespace

void write_matrix_file(const std::string& path, const Grid<double>& g) { write_matrix_file_impl(path, g); }
void write_matrix_file(const std::string& path, const Grid<int>& g) { write_matrix_file_impl(path, g); }

Grid<double> read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return read_matrix(in);
}

void write_labeled_cloud(std::ostream& out, const PointCloud& cloud, std::span<const int> labels) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        out << format_double(cloud[i].x) << ',' << format_double(cloud[i].y) << ','
            << format_double(cloud[i].z) << ',' << (i < labels.size() ? labels[i] : 0) << '\n';
    }
}

} // namespace lidarseg
