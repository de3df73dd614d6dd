#include "lidarseg/pipeline.hpp"

#include <chrono>
#include <cmath>

namespace lidarseg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

PipelineResult run_pipeline(const PointCloud& cloud, const LidarConfig& cfg,
                            const FilterParams& params) {
    PipelineResult res;
    const auto start = Clock::now();

    auto t = Clock::now();
    ProjectionResult proj = build_depth_image(cloud, cfg);
    res.depth = std::move(proj.depth);
    res.mapper = std::move(proj.mapper);
    res.timings.projection_ms = ms_since(t);

    t = Clock::now();
    bool any_return = false;
    for (double v : res.depth.data())
        if (v > 0.0) { any_return = true; break; }
    if (any_return)
        res.barcode = filter_barcode(persistence_maxima(res.depth), params.persistence_threshold);
    res.timings.peaks_ms = ms_since(t);

    t = Clock::now();
    res.filtered = modified_bf(res.depth, maxima_locations(res.barcode),
                               params.sigma_x, params.sigma_n);
    res.processed = merge_processed(res.depth, res.filtered);
    res.timings.sharpen_ms = ms_since(t);

    t = Clock::now();
    res.angle = build_angle_image(res.processed, cfg, params.depth_epsilon);
    res.timings.angles_ms = ms_since(t);

    t = Clock::now();
    res.smoothed = smooth_angle_image(res.angle, params.window, params.pc);
    res.timings.ssa_ms = ms_since(t);

    t = Clock::now();
    res.seeds = select_seeds(res.processed, params.depth_epsilon);
    res.labels = label_components(res.processed, res.smoothed, res.seeds,
                                  params.beta_deg, params.theta_seg_deg, params.depth_epsilon);
    res.labels_per_point = point_labels(res.labels, res.mapper, cloud.size());
    res.regions = extract_regions(res.labels, res.mapper, cloud);
    res.timings.segment_ms = ms_since(t);

    res.timings.total_ms = ms_since(start);
    return res;
}

BenchStats bench_pipeline(const PointCloud& cloud, const LidarConfig& cfg,
                          const FilterParams& params, int runs) {
    BenchStats stats;
    stats.runs = runs;
    if (runs <= 0) return stats;

    std::vector<double> samples(runs);
    for (int i = 0; i < runs; ++i) {
        const auto t0 = Clock::now();
        PipelineResult r = run_pipeline(cloud, cfg, params);
        samples[i] = ms_since(t0);
        (void)r;
    }
    double sum = 0.0;
    for (double s : samples) sum += s;
    stats.mean_ms = sum / runs;
    if (runs > 1) {
        double sq = 0.0;
        for (double s : samples) sq += (s - stats.mean_ms) * (s - stats.mean_ms);
        stats.std_ms = std::sqrt(sq / (runs - 1));
    }
    return stats;
}

} // namespace lidarseg
