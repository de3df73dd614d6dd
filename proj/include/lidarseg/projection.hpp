#pragma once

#include <optional>

#include "lidarseg/types.hpp"

namespace lidarseg {

struct BeamAngles {
    double angle_x = 0.0; // elevation, asin(z / dist)
    double angle_y = 0.0; // azimuth, atan2(y, x)
    double dist = 0.0;
};

// Throws ZeroRangeError when dist <= 1e-9.
BeamAngles point_angles(const Point3& p);

// Nearest-beam row (ties break toward the smaller row index) and wrapped
// azimuth column. Returns nullopt when the elevation falls outside the
// acceptance margin around the nearest beam.
std::optional<Pixel> pixel_of(double angle_x, double angle_y, const LidarConfig& cfg);

struct ProjectionResult {
    DepthImage depth;   // per pixel: min range of its points, 0 if none
    DepthMapper mapper;
};

ProjectionResult build_depth_image(const PointCloud& cloud, const LidarConfig& cfg);

} // namespace lidarseg
