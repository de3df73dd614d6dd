#pragma once

#include <span>

#include "lidarseg/types.hpp"

namespace lidarseg {

// Gaussian density, the weighting kernel of the sharpening filter.
double gaussian(double x, double sigma);

// Sharpens the image at the given maxima only: each listed pixel becomes the
// normalized Gaussian-weighted average of its valid 8-neighbours plus its own
// value; every other pixel is copied bit for bit. No-return neighbours
// (value 0) are skipped, and an empty neighbourhood leaves the pixel as is.
// Columns wrap at the azimuth seam; rows do not.
DepthImage modified_bf(const DepthImage& img, std::span<const Pixel> maxima,
                       double sigma_x, double sigma_n, bool wrap_columns = true);

// Elementwise mean of the two images; pixels with no return in `depth`
// stay 0. Throws DimensionMismatchError.
DepthImage merge_processed(const DepthImage& depth, const DepthImage& filtered);

} // namespace lidarseg
