#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "lidarseg/types.hpp"

namespace lidarseg {

// Plain `key = value` lines, `#` starts a comment, blank lines ignored.
// Keys keep file order; duplicate keys keep the last value when applied.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in);
std::vector<std::pair<std::string, std::string>> read_key_values_file(const std::string& path);

// Applies namespaced keys (lidar.width, filter.pc, filter.beta, filter.window,
// bf.sigma_x, bf.sigma_n, peaks.persistence_threshold, segment.theta_seg,
// segment.depth_epsilon, lidar.elevations as comma-separated degrees) on top
// of the given config/params. Unknown keys and unparsable values throw
// ConfigError; the result is not re-validated here.
void apply_config(const std::vector<std::pair<std::string, std::string>>& kv,
                  LidarConfig& cfg, FilterParams& params);
void apply_config_file(const std::string& path, LidarConfig& cfg, FilterParams& params);

// Parsing helpers shared with the camera-file loader.
double parse_double(const std::string& key, const std::string& value);
int parse_int(const std::string& key, const std::string& value);
std::vector<double> parse_double_list(const std::string& key, const std::string& value);

} // namespace lidarseg
