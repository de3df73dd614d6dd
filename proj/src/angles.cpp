#include "lidarseg/angles.hpp"

#include <cmath>

namespace lidarseg {

double range_angle(double depth_up, double depth_down,
                   double elev_up_rad, double elev_down_rad, double depth_epsilon) {
    if (depth_up <= depth_epsilon || depth_down <= depth_epsilon)
        return 0.0;
    double dz = std::abs(depth_up * std::sin(elev_up_rad) - depth_down * std::sin(elev_down_rad));
    double dx = std::abs(depth_up * std::cos(elev_up_rad) - depth_down * std::cos(elev_down_rad));
    return std::atan2(dz, dx); // both args >= 0, so the result is in [0, pi/2]
}

AngleImage build_angle_image(const DepthImage& depth, const LidarConfig& cfg, double depth_epsilon) {
    if (depth.rows() != cfg.channels || depth.cols() != cfg.width)
        throw DimensionMismatchError("depth image does not match the lidar config");
    const std::vector<double> elev = cfg.elevations_rad();
    AngleImage out(cfg.channels - 1, cfg.width);
    for (int r = 0; r + 1 < cfg.channels; ++r)
        for (int c = 0; c < cfg.width; ++c)
            out(r, c) = range_angle(depth(r, c), depth(r + 1, c), elev[r], elev[r + 1], depth_epsilon);
    return out;
}

} // namespace lidarseg
