#include "lidarseg/types.hpp"

#include <algorithm>
#include <numeric>

namespace lidarseg {

std::vector<double> LidarConfig::default_elevations(int n) {
    std::vector<double> elev(n);
    if (n == 1) {
        elev[0] = 0.0;
        return elev;
    }
    const double top = 15.0;
    const double step = 30.0 / (n - 1);
    for (int i = 0; i < n; ++i) elev[i] = top - step * i;
    return elev;
}

std::vector<double> LidarConfig::elevations_rad() const {
    std::vector<double> out(elevations_deg.size());
    std::transform(elevations_deg.begin(), elevations_deg.end(), out.begin(), deg2rad);
    return out;
}

std::size_t DepthMapper::mapped_count() const {
    return std::accumulate(points.begin(), points.end(), std::size_t{0},
                           [](std::size_t acc, const auto& v) { return acc + v.size(); });
}

void validate(const LidarConfig& cfg, const FilterParams& params) {
    if (cfg.channels < 2)
        throw ConfigError("channels", "must be >= 2");
    if (cfg.width < 2)
        throw ConfigError("width", "must be >= 2");
    if (static_cast<int>(cfg.elevations_deg.size()) != cfg.channels)
        throw ConfigError("elevations", "expected " + std::to_string(cfg.channels) +
                                            " entries, got " + std::to_string(cfg.elevations_deg.size()));
    for (std::size_t i = 0; i < cfg.elevations_deg.size(); ++i) {
        if (!std::isfinite(cfg.elevations_deg[i]))
            throw ConfigError("elevations", "entry " + std::to_string(i) + " is not finite");
        if (i > 0 && cfg.elevations_deg[i] >= cfg.elevations_deg[i - 1])
            throw ConfigError("elevations", "must be strictly decreasing (row 0 topmost)");
    }
    if (!(cfg.horizontal_fov_deg > 0.0 && cfg.horizontal_fov_deg <= 360.0))
        throw ConfigError("horizontal_fov", "must be in (0, 360]");
    if (!(cfg.row_margin_factor > 0.0))
        throw ConfigError("row_margin_factor", "must be > 0");

    // The smoother runs on angle-image columns of length channels-1.
    if (!(params.window > 1 && params.window < cfg.channels - 1))
        throw ConfigError("window", "requires 1 < window < channels-1");
    if (!(params.pc >= 1 && params.pc <= params.window))
        throw ConfigError("pc", "requires 1 <= pc <= window");
    if (!(params.beta_deg > 0.0 && params.beta_deg < 90.0))
        throw ConfigError("beta", "must be in (0, 90) degrees");
    if (!(params.theta_seg_deg > 0.0 && params.theta_seg_deg < 90.0))
        throw ConfigError("theta_seg", "must be in (0, 90) degrees");
    if (!(params.sigma_x > 0.0))
        throw ConfigError("sigma_x", "must be > 0");
    if (!(params.sigma_n > 0.0))
        throw ConfigError("sigma_n", "must be > 0");
    if (!(params.persistence_threshold >= 0.0 && params.persistence_threshold <= 1.0))
        throw ConfigError("persistence_threshold", "must be in [0, 1]");
    if (!(params.depth_epsilon >= 0.0))
        throw ConfigError("depth_epsilon", "must be >= 0");
}

void check_depth_image(const DepthImage& img, const LidarConfig& cfg) {
    if (img.rows() != cfg.channels || img.cols() != cfg.width)
        throw DimensionMismatchError("depth image is " + std::to_string(img.rows()) + "x" +
                                     std::to_string(img.cols()) + ", config wants " +
                                     std::to_string(cfg.channels) + "x" + std::to_string(cfg.width));
    for (double v : img.data())
        if (!std::isfinite(v) || v < 0.0)
            throw DimensionMismatchError("depth image holds a negative or non-finite value");
}

} // namespace lidarseg
