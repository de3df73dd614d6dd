#pragma once

#include "lidarseg/angles.hpp"
#include "lidarseg/peaks.hpp"
#include "lidarseg/projection.hpp"
#include "lidarseg/segment.hpp"
#include "lidarseg/sharpen.hpp"
#include "lidarseg/ssa.hpp"
#include "lidarseg/types.hpp"

namespace lidarseg {

struct StageTimings {
    double projection_ms = 0.0;
    double peaks_ms = 0.0;
    double sharpen_ms = 0.0;
    double angles_ms = 0.0;
    double ssa_ms = 0.0;
    double segment_ms = 0.0;
    double total_ms = 0.0;
};

struct PipelineResult {
    DepthImage depth;
    DepthMapper mapper;
    Barcode barcode;       // after the persistence threshold
    DepthImage filtered;
    DepthImage processed;
    AngleImage angle;
    AngleImage smoothed;
    std::vector<Pixel> seeds;
    LabelImage labels;
    std::vector<int> labels_per_point;
    Regions regions;
    StageTimings timings;
};

// Full filter pass over one scan: depth image, persistent maxima, sharpening,
// range angles, column smoothing, seeded BFS labeling, region extraction.
PipelineResult run_pipeline(const PointCloud& cloud, const LidarConfig& cfg,
                            const FilterParams& params);

struct BenchStats {
    double mean_ms = 0.0;
    double std_ms = 0.0;
    int runs = 0;
};

// Repeats run_pipeline (no file I/O) and reports mean and sample standard
// deviation of the total latency.
BenchStats bench_pipeline(const PointCloud& cloud, const LidarConfig& cfg,
                          const FilterParams& params, int runs);

} // namespace lidarseg
