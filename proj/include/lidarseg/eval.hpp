#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lidarseg/types.hpp"

namespace lidarseg {

// Pinhole camera plus a rigid LiDAR-to-camera transform (row-major 4x4).
// Camera frame: x right, y down, z forward.
struct CameraModel {
    double fx = 500.0, fy = 500.0;
    double cx = 320.0, cy = 240.0;
    int width = 640, height = 480;
    std::array<double, 16> extrinsic{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
};

// Throws ConfigError when fx/fy are not positive or the rotation block is
// not orthonormal within 1e-6.
void validate(const CameraModel& cam);

// `key = value` text: fx, fy, cx, cy, width, height, extrinsic (16 row-major
// floats, comma separated).
CameraModel load_camera(const std::string& path);

using Mask = Grid<std::uint8_t>; // nonzero = positive class

struct Prf1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// precision = tp/(tp+fp) (0 when undefined), recall = tp/(tp+fn) (0 when
// undefined), f1 = harmonic mean (0 when precision + recall == 0).
Prf1 prf1(const Mask& predicted, const Mask& truth);

struct ProjectedMasks {
    Mask roi;
    Mask uninterest;
    std::size_t dropped = 0; // behind the camera or outside the image
};

// Projects labeled points into camera space and rasterizes each as a filled
// disc of dilation_radius pixels into its class mask; where the two masks
// overlap, the ROI class wins.
ProjectedMasks project_labels(const PointCloud& cloud, std::span<const int> labels,
                              const CameraModel& cam, int dilation_radius = 2);

// PGM (P2 or P5), maxval up to 65535; nonzero samples become 1.
Mask read_pgm(std::istream& in);
Mask read_pgm_file(const std::string& path);

struct ScanScores {
    std::string stem;
    Prf1 roi;
    Prf1 uninterest;
};

struct ClassSummary {
    Prf1 mean;
    Prf1 stddev; // sample standard deviation, 0 for a single scan
};

// Unweighted per-scan aggregation (compensated summation).
ClassSummary summarize_scores(const std::vector<Prf1>& scores);

struct EvalReport {
    std::vector<ScanScores> scans;
    ClassSummary roi;
    ClassSummary uninterest;
};

// Runs the full pipeline on every scan in scan_dir (sorted by filename),
// projects the labels, and scores them against `<stem>.roi.pgm` /
// `<stem>.rou.pgm` in truth_dir. Throws MissingTruthError when a mask is
// absent.
EvalReport evaluate_run(const std::string& scan_dir, const std::string& truth_dir,
                        const LidarConfig& cfg, const FilterParams& params,
                        const CameraModel& cam, int dilation_radius = 2);

// CSV `scan,class,precision,recall,f1` rows followed by mean and std rows.
void write_report_csv(std::ostream& out, const EvalReport& report);

} // namespace lidarseg
