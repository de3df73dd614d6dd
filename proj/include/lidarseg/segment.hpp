#pragma once

#include <span>
#include <vector>

#include "lidarseg/types.hpp"

namespace lidarseg {

// Per column, bottom-up: the first pixel with depth > depth_epsilon and the
// pixel with the smallest such depth, appended in that order (deduplicated
// when both are the same pixel). Columns with no valid pixel contribute
// nothing.
std::vector<Pixel> select_seeds(const DepthImage& depth, double depth_epsilon);

// Two-phase BFS over valid pixels (depth > depth_epsilon), 4-connected with
// column wraparound.
//
// Phase 1 grows label 1 (uninterest) from the seeds whose adjacent smoothed
// angle is below beta, admitting a neighbour when the edge angle stays below
// beta. Phase 2 gives every remaining valid pixel a component id >= 2,
// admitting a neighbour when its edge angle differs from the current pixel's
// own angle by less than theta_seg. The vertical edge between depth rows r
// and r+1 carries smoothed(r, c); a pixel's own angle (also used for
// horizontal edges) is the vertical angle of its lower adjacent row, clamped
// at the bottom row.
LabelImage label_components(const DepthImage& depth, const AngleImage& smoothed,
                            std::span<const Pixel> seeds, double beta_deg,
                            double theta_seg_deg, double depth_epsilon);

struct Regions {
    std::vector<PointCloud> roi; // index i holds label i+2
    PointCloud non_roi;          // label 1
    std::size_t dropped = 0;     // out-of-FOV points, excluded from both
};

// Per-point labels: every point of a pixel inherits the pixel's label;
// discarded points get 0.
std::vector<int> point_labels(const LabelImage& labels, const DepthMapper& mapper,
                              std::size_t cloud_size);

Regions extract_regions(const LabelImage& labels, const DepthMapper& mapper,
                        const PointCloud& cloud);

} // namespace lidarseg
