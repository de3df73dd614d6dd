#include "lidarseg/config.hpp"

#include <cstdlib>
#include <fstream>

#include "lidarseg/errors.hpp"

namespace lidarseg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ParseError(lineno, "empty key");
        kv.emplace_back(std::move(key), std::move(value));
    }
    return kv;
}

std::vector<std::pair<std::string, std::string>> read_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return read_key_values(in);
}

double parse_double(const std::string& key, const std::string& value) {
    const char* s = value.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ConfigError(key, "not a number: '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const char* s = value.c_str();
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
        throw ConfigError(key, "not an integer: '" + value + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t comma = value.find(',', pos);
        std::string item = value.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        item.erase(0, item.find_first_not_of(" \t"));
        if (auto e = item.find_last_not_of(" \t"); e != std::string::npos) item.erase(e + 1);
        if (!item.empty()) out.push_back(parse_double(key, item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty())
        throw ConfigError(key, "empty list");
    return out;
}

void apply_config(const std::vector<std::pair<std::string, std::string>>& kv,
                  LidarConfig& cfg, FilterParams& params) {
    for (const auto& [key, value] : kv) {
        if (key == "lidar.width") {
            cfg.width = parse_int(key, value);
        } else if (key == "lidar.elevations") {
            cfg.elevations_deg = parse_double_list(key, value);
            cfg.channels = static_cast<int>(cfg.elevations_deg.size());
        } else if (key == "filter.pc") {
            params.pc = parse_int(key, value);
        } else if (key == "filter.beta") {
            params.beta_deg = parse_double(key, value);
        } else if (key == "filter.window") {
            params.window = parse_int(key, value);
        } else if (key == "bf.sigma_x") {
            params.sigma_x = parse_double(key, value);
        } else if (key == "bf.sigma_n") {
            params.sigma_n = parse_double(key, value);
        } else if (key == "peaks.persistence_threshold") {
            params.persistence_threshold = parse_double(key, value);
        } else if (key == "segment.theta_seg") {
            params.theta_seg_deg = parse_double(key, value);
        } else if (key == "segment.depth_epsilon") {
            params.depth_epsilon = parse_double(key, value);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
}

void apply_config_file(const std::string& path, LidarConfig& cfg, FilterParams& params) {
    apply_config(read_key_values_file(path), cfg, params);
}

} // namespace lidarseg
