#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lidarseg/types.hpp"

namespace lidarseg {

// Singular spectrum decomposition of a series: the series is embedded as a
// W x K Hankel trajectory matrix X (K = N - W + 1), and X X^t is
// eigendecomposed. `rank` counts eigenvalues above 1e-10 * lambda_1.
struct SsaDecomposition {
    int series_len = 0;          // N
    int window = 0;              // W
    Eigen::VectorXd eigenvalues; // window entries, descending, clamped >= 0
    Eigen::MatrixXd left;        // W x rank, eigenvectors of X X^t
    Eigen::MatrixXd factors;     // K x rank, X^t U_j / sqrt(lambda_j)
    int rank = 0;
};

// Throws BadWindowError unless 1 < window < series length.
SsaDecomposition ssa_decompose(std::span<const double> series, int window);

// Sum of the leading min(pc, rank) rank-one terms, hankelized back to a
// series by anti-diagonal averaging. pc >= rank reproduces the input.
std::vector<double> ssa_reconstruct(const SsaDecomposition& dec, int pc);

// Column-wise smoothing of the angle image; undefined entries (0) pass
// through as ordinary values. Output clamped to [0, pi/2].
AngleImage smooth_angle_image(const AngleImage& img, int window, int pc);

} // namespace lidarseg
