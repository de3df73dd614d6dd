#include "lidarseg/projection.hpp"

#include <cmath>

namespace lidarseg {

BeamAngles point_angles(const Point3& p) {
    double dist = p.norm();
    if (!(dist > 1e-9))
        throw ZeroRangeError();
    return {std::asin(p.z / dist), std::atan2(p.y, p.x), dist};
}

std::optional<Pixel> pixel_of(double angle_x, double angle_y, const LidarConfig& cfg) {
    const std::vector<double> elev = cfg.elevations_rad();
    const int n = static_cast<int>(elev.size());

    // Elevations are strictly decreasing and few; a linear scan is fine.
    int row = 0;
    double best = std::abs(angle_x - elev[0]);
    for (int r = 1; r < n; ++r) {
        double d = std::abs(angle_x - elev[r]);
        if (d < best) { // ties keep the smaller row
            best = d;
            row = r;
        }
    }

    // Reject returns further from the beam than row_margin_factor * half the
    // inter-beam gap on the side the return falls on.
    double gap;
    if (angle_x > elev[row])
        gap = (row > 0) ? elev[row - 1] - elev[row] : elev[0] - elev[1];
    else
        gap = (row < n - 1) ? elev[row] - elev[row + 1] : elev[n - 2] - elev[n - 1];
    if (best > 0.5 * gap * cfg.row_margin_factor)
        return std::nullopt;

    long col = std::llround((angle_y + M_PI) / (2.0 * M_PI) * cfg.width) % cfg.width;
    if (col < 0) col += cfg.width;
    return Pixel{row, static_cast<int>(col)};
}

ProjectionResult build_depth_image(const PointCloud& cloud, const LidarConfig& cfg) {
    ProjectionResult res{DepthImage(cfg.channels, cfg.width), DepthMapper(cfg.channels, cfg.width)};
    DepthImage& depth = res.depth;
    DepthMapper& mapper = res.mapper;

    for (std::uint32_t i = 0; i < cloud.size(); ++i) {
        const Point3& p = cloud[i];
        double dist = p.norm();
        if (!(dist > 1e-9)) {
            mapper.discarded.push_back(i);
            continue;
        }
        double angle_x = std::asin(p.z / dist);
        double angle_y = std::atan2(p.y, p.x);
        std::optional<Pixel> px = pixel_of(angle_x, angle_y, cfg);
        if (!px) {
            mapper.discarded.push_back(i);
            continue;
        }
        std::size_t at = mapper.index(px->row, px->col);
        mapper.points[at].push_back(i);
        double& cell = depth(px->row, px->col);
        // Keep the closest return; ties keep the earliest point index.
        if (mapper.retained[at] == DepthMapper::kNone || dist < cell) {
            cell = dist;
            mapper.retained[at] = i;
        }
    }
    return res;
}

} // namespace lidarseg
