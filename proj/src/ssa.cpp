#include "lidarseg/ssa.hpp"

#include <algorithm>
#include <cmath>

namespace lidarseg {

SsaDecomposition ssa_decompose(std::span<const double> series, int window) {
    const int n = static_cast<int>(series.size());
    if (!(window > 1 && window < n))
        throw BadWindowError("window " + std::to_string(window) +
                             " out of range for series length " + std::to_string(n));
    const int k = n - window + 1;

    Eigen::MatrixXd x(window, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < window; ++i)
            x(i, j) = series[i + j];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x * x.transpose());

    SsaDecomposition dec;
    dec.series_len = n;
    dec.window = window;
    dec.eigenvalues = eig.eigenvalues().reverse(); // descending
    for (int i = 0; i < window; ++i)
        dec.eigenvalues[i] = std::max(dec.eigenvalues[i], 0.0);

    const double tol = 1e-10 * dec.eigenvalues[0];
    int d = 0;
    while (d < window && dec.eigenvalues[d] > tol && dec.eigenvalues[d] > 0.0) ++d;
    dec.rank = d;

    dec.left.resize(window, d);
    dec.factors.resize(k, d);
    for (int j = 0; j < d; ++j) {
        dec.left.col(j) = eig.eigenvectors().col(window - 1 - j);
        dec.factors.col(j) = x.transpose() * dec.left.col(j) / std::sqrt(dec.eigenvalues[j]);
    }
    return dec;
}

std::vector<double> ssa_reconstruct(const SsaDecomposition& dec, int pc) {
    const int n = dec.series_len;
    const int w = dec.window;
    const int k = n - w + 1;
    const int m = std::clamp(pc, 0, dec.rank);

    Eigen::MatrixXd xhat = Eigen::MatrixXd::Zero(w, k);
    for (int j = 0; j < m; ++j)
        xhat += std::sqrt(dec.eigenvalues[j]) * dec.left.col(j) * dec.factors.col(j).transpose();

    // Anti-diagonal averaging: entry (i, j) contributes to series index i + j.
    std::vector<double> out(n, 0.0);
    std::vector<int> count(n, 0);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < w; ++i) {
            out[i + j] += xhat(i, j);
            ++count[i + j];
        }
    for (int t = 0; t < n; ++t) out[t] /= count[t];
    return out;
}

AngleImage smooth_angle_image(const AngleImage& img, int window, int pc) {
    AngleImage out(img.rows(), img.cols());
    std::vector<double> column(img.rows());
    for (int c = 0; c < img.cols(); ++c) {
        for (int r = 0; r < img.rows(); ++r) column[r] = img(r, c);
        SsaDecomposition dec = ssa_decompose(column, window);
        std::vector<double> smooth = ssa_reconstruct(dec, pc);
        for (int r = 0; r < img.rows(); ++r)
            out(r, c) = std::clamp(smooth[r], 0.0, M_PI / 2.0);
    }
    return out;
}

} // namespace lidarseg
