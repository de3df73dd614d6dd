#include "lidarseg/sharpen.hpp"

#include <algorithm>
#include <cmath>

namespace lidarseg {

double gaussian(double x, double sigma) {
    const double u = x / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * M_PI));
}

DepthImage modified_bf(const DepthImage& img, std::span<const Pixel> maxima,
                       double sigma_x, double sigma_n, bool wrap_columns) {
    DepthImage out = img;
    const int rows = img.rows();
    const int cols = img.cols();

    // The two kernels only ever see offsets 1 and sqrt(2).
    const double w_ortho = gaussian(1.0, sigma_x) * gaussian(1.0, sigma_n);
    const double w_diag = gaussian(M_SQRT2, sigma_x) * gaussian(M_SQRT2, sigma_n);

    std::vector<Pixel> sorted(maxima.begin(), maxima.end());
    std::sort(sorted.begin(), sorted.end()); // fixed summation order

    for (const Pixel& px : sorted) {
        double acc = 0.0;
        double wp = 0.0;
        for (int dr = -1; dr <= 1; ++dr) {
            int r = px.row + dr;
            if (r < 0 || r >= rows) continue;
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                int c = px.col + dc;
                if (c < 0 || c >= cols) {
                    if (!wrap_columns) continue;
                    c = (c + cols) % cols;
                }
                double v = img(r, c);
                if (v <= 0.0) continue; // no return
                double w = (dr != 0 && dc != 0) ? w_diag : w_ortho;
                acc += w * v;
                wp += w;
            }
        }
        out(px.row, px.col) = (wp > 0.0 ? acc / wp : 0.0) + img(px.row, px.col);
    }
    return out;
}

DepthImage merge_processed(const DepthImage& depth, const DepthImage& filtered) {
    if (!depth.same_shape(filtered))
        throw DimensionMismatchError("depth and filtered image shapes differ");
    DepthImage out(depth.rows(), depth.cols());
    for (std::size_t i = 0; i < depth.data().size(); ++i) {
        double d = depth.data()[i];
        out.data()[i] = d == 0.0 ? 0.0 : 0.5 * (d + filtered.data()[i]);
    }
    return out;
}

} // namespace lidarseg
