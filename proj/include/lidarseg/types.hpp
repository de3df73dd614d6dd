#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lidarseg/errors.hpp"

namespace lidarseg {

// Sensor frame: x forward, y left, z up, meters.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }

    friend bool operator==(const Point3&, const Point3&) = default;
};

using PointCloud = std::vector<Point3>;

struct Pixel {
    int row = 0;
    int col = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
    friend auto operator<=>(const Pixel&, const Pixel&) = default; // lexicographic (row, col)
};

// Dense row-major grid. Value 0 encodes "no data" in depth and angle images.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool same_shape(const Grid& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using DepthImage = Grid<double>; // channels x width, meters, 0 = no return
using AngleImage = Grid<double>; // (channels-1) x width, radians in [0, pi/2], 0 = undefined
using LabelImage = Grid<int>;    // 0 unlabeled, 1 uninterest, >=2 ROI component ids

// Beam geometry of a spinning LiDAR. Row 0 is the topmost beam; column 0
// corresponds to azimuth -180 deg and columns increase with azimuth.
struct LidarConfig {
    int channels = 16;
    int width = 870;
    std::vector<double> elevations_deg = default_elevations(16); // strictly decreasing
    double horizontal_fov_deg = 360.0;
    // A return is assigned to the nearest beam only if it deviates by less
    // than this fraction of half the local inter-beam gap.
    double row_margin_factor = 1.5;

    std::vector<double> elevations_rad() const;

    // +15..-15 deg in uniform steps (VLP-16 layout for n = 16).
    static std::vector<double> default_elevations(int n);
    static LidarConfig vlp16() { return LidarConfig{}; }
};

struct FilterParams {
    int pc = 5;                         // SVD components kept by the smoother
    double beta_deg = 10.0;             // ground-removal angle
    int window = 8;                     // SSA window W
    double sigma_x = 1.2;               // sharpening kernel std dev
    double sigma_n = 1.3;               // second sharpening kernel std dev
    double persistence_threshold = 0.1; // fraction of global intensity span
    double theta_seg_deg = 10.0;        // ROI BFS angle threshold
    double depth_epsilon = 0.01;        // meters; at or below counts as no return
};

// Pixel -> contributing point indices, built alongside the depth image.
// Every projected point lands in exactly one pixel list; points that fall
// outside the vertical field of view (or have zero range) go to `discarded`.
struct DepthMapper {
    static constexpr std::uint32_t kNone = 0xffffffffu;

    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::uint32_t>> points; // row-major, per pixel
    std::vector<std::uint32_t> retained;            // closest point per pixel, kNone if empty
    std::vector<std::uint32_t> discarded;

    DepthMapper() = default;
    DepthMapper(int r, int c)
        : rows(r), cols(c),
          points(static_cast<std::size_t>(r) * c),
          retained(static_cast<std::size_t>(r) * c, kNone) {}

    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols + c; }
    const std::vector<std::uint32_t>& at(int r, int c) const { return points[index(r, c)]; }
    std::uint32_t retained_at(int r, int c) const { return retained[index(r, c)]; }

    std::size_t mapped_count() const;
};

// Throws ConfigError naming the first violated constraint.
void validate(const LidarConfig& cfg, const FilterParams& params);

// Depth image invariants: dimensions match the config, values finite and >= 0.
void check_depth_image(const DepthImage& img, const LidarConfig& cfg);

inline double deg2rad(double d) { return d * (M_PI / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / M_PI); }

} // namespace lidarseg
