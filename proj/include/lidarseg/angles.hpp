#pragma once

#include "lidarseg/types.hpp"

namespace lidarseg {

// Inclination of the chord between two vertically adjacent returns, in
// [0, pi/2]: ~0 for coplanar ground points, pi/2 for a vertical surface.
// Returns 0 (undefined) when either depth is at or below depth_epsilon.
double range_angle(double depth_up, double depth_down,
                   double elev_up_rad, double elev_down_rad, double depth_epsilon);

// (channels-1) x width image; row r pairs depth rows r (up) and r+1 (down).
AngleImage build_angle_image(const DepthImage& depth, const LidarConfig& cfg, double depth_epsilon);

} // namespace lidarseg
