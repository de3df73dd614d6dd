#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lidarseg/angles.hpp"
#include "lidarseg/segment.hpp"

using namespace lidarseg;

namespace {

// Independent per-column seed oracle: two passes, no shared trackers.
std::vector<Pixel> oracle_seeds(const DepthImage& img, double eps) {
    std::vector<Pixel> out;
    for (int c = 0; c < img.cols(); ++c) {
        int first = -1;
        for (int r = img.rows() - 1; r >= 0 && first < 0; --r)
            if (img(r, c) > eps) first = r;
        int best = -1;
        for (int r = 0; r < img.rows(); ++r)
            if (img(r, c) > eps && (best < 0 || img(r, c) < img(best, c))) best = r;
        if (first >= 0) out.push_back({first, c});
        if (best >= 0 && best != first) out.push_back({best, c});
    }
    return out;
}

DepthImage ground_depth(const LidarConfig& cfg, double plane_z) {
    DepthImage img(cfg.channels, cfg.width, 0.0);
    auto elev = cfg.elevations_rad();
    for (int r = 0; r < cfg.channels; ++r) {
        if (elev[r] >= 0.0) continue;
        for (int c = 0; c < cfg.width; ++c) img(r, c) = -plane_z / std::sin(-elev[r]);
    }
    return img;
}

DepthImage wall_depth(const LidarConfig& cfg, double horizontal_range, int col_lo, int col_hi) {
    DepthImage img(cfg.channels, cfg.width, 0.0);
    auto elev = cfg.elevations_rad();
    for (int r = 0; r < cfg.channels; ++r)
        for (int c = col_lo; c != col_hi; c = (c + 1) % cfg.width)
            img(r, c) = horizontal_range / std::cos(elev[r]);
    return img;
}

} // namespace

TEST_CASE("single valid pixel gives one deduplicated seed") {
    DepthImage img(4, 1, 0.0);
    img(1, 0) = 3.0;
    auto seeds = select_seeds(img, 0.01);
    REQUIRE(seeds.size() == 1);
    CHECK(seeds[0] == Pixel{1, 0});
}

TEST_CASE("bottom-up first hit and minimum depth are both seeded") {
    DepthImage img(4, 1, 0.0);
    // top -> bottom: 0, 7, 3, 5
    img(1, 0) = 7.0;
    img(2, 0) = 3.0;
    img(3, 0) = 5.0;
    auto seeds = select_seeds(img, 0.01);
    REQUIRE(seeds.size() == 2);
    CHECK(seeds[0] == Pixel{3, 0}); // first valid from the bottom
    CHECK(seeds[1] == Pixel{2, 0}); // smallest depth in the column
}

TEST_CASE("all-zero columns contribute nothing") {
    CHECK(select_seeds(DepthImage(6, 5, 0.0), 0.01).empty());
}

TEST_CASE("seed selection matches the per-column oracle on random images") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    std::bernoulli_distribution hole(0.4);
    for (int trial = 0; trial < 300; ++trial) {
        DepthImage img(8, 12);
        for (double& v : img.data()) v = hole(rng) ? 0.0 : dist(rng);
        CHECK(select_seeds(img, 0.01) == oracle_seeds(img, 0.01));
    }
}

TEST_CASE("flat ground scan is entirely uninterest at beta = 10") {
    LidarConfig cfg;
    FilterParams params;
    DepthImage depth = ground_depth(cfg, -1.5);
    AngleImage angle = build_angle_image(depth, cfg, params.depth_epsilon);
    auto seeds = select_seeds(depth, params.depth_epsilon);
    LabelImage labels = label_components(depth, angle, seeds, 10.0, 10.0, params.depth_epsilon);
    for (int r = 0; r < cfg.channels; ++r)
        for (int c = 0; c < cfg.width; ++c) {
            if (depth(r, c) > params.depth_epsilon)
                CHECK(labels(r, c) == 1);
            else
                CHECK(labels(r, c) == 0);
        }
}

TEST_CASE("wall-only scan is a single ROI component, nothing uninterest") {
    LidarConfig cfg;
    FilterParams params;
    DepthImage depth = wall_depth(cfg, 5.0, 100, 300);
    AngleImage angle = build_angle_image(depth, cfg, params.depth_epsilon);
    auto seeds = select_seeds(depth, params.depth_epsilon);
    LabelImage labels = label_components(depth, angle, seeds, 10.0, 10.0, params.depth_epsilon);
    std::set<int> roi_ids;
    for (int r = 0; r < cfg.channels; ++r)
        for (int c = 0; c < cfg.width; ++c) {
            CHECK(labels(r, c) != 1);
            if (labels(r, c) >= 2) roi_ids.insert(labels(r, c));
        }
    CHECK(roi_ids.size() == 1);
}

TEST_CASE("empty image stays unlabeled") {
    LidarConfig cfg;
    DepthImage depth(cfg.channels, cfg.width, 0.0);
    AngleImage angle(cfg.channels - 1, cfg.width, 0.0);
    LabelImage labels = label_components(depth, angle, {}, 10.0, 10.0, 0.01);
    for (int v : labels.data()) CHECK(v == 0);
}

TEST_CASE("every valid pixel receives exactly one label") {
    std::mt19937 rng(73);
    LidarConfig cfg;
    cfg.width = 40; // small synthetic grid, still wraps
    cfg.channels = 16;
    std::uniform_real_distribution<double> dist(1.0, 30.0);
    std::bernoulli_distribution hole(0.3);
    DepthImage depth(cfg.channels, cfg.width);
    for (double& v : depth.data()) v = hole(rng) ? 0.0 : dist(rng);
    AngleImage angle = build_angle_image(depth, cfg, 0.01);
    auto seeds = select_seeds(depth, 0.01);
    LabelImage labels = label_components(depth, angle, seeds, 10.0, 10.0, 0.01);
    std::set<int> roi_ids;
    for (int r = 0; r < depth.rows(); ++r)
        for (int c = 0; c < depth.cols(); ++c) {
            if (depth(r, c) > 0.01) {
                CHECK(labels(r, c) >= 1);
                if (labels(r, c) >= 2) roi_ids.insert(labels(r, c));
            } else {
                CHECK(labels(r, c) == 0);
            }
        }
    // ROI ids are contiguous from 2.
    if (!roi_ids.empty()) {
        CHECK(*roi_ids.begin() == 2);
        CHECK(*roi_ids.rbegin() == 2 + static_cast<int>(roi_ids.size()) - 1);
    }
}

TEST_CASE("labeling is deterministic") {
    std::mt19937 rng(79);
    LidarConfig cfg;
    cfg.width = 60;
    std::uniform_real_distribution<double> dist(1.0, 30.0);
    std::bernoulli_distribution hole(0.3);
    DepthImage depth(cfg.channels, cfg.width);
    for (double& v : depth.data()) v = hole(rng) ? 0.0 : dist(rng);
    AngleImage angle = build_angle_image(depth, cfg, 0.01);
    auto seeds = select_seeds(depth, 0.01);
    LabelImage a = label_components(depth, angle, seeds, 10.0, 10.0, 0.01);
    LabelImage b = label_components(depth, angle, seeds, 10.0, 10.0, 0.01);
    CHECK(a == b);
}

TEST_CASE("growing beta never shrinks the uninterest set") {
    std::mt19937 rng(83);
    LidarConfig cfg;
    cfg.width = 50;
    std::uniform_real_distribution<double> dist(1.0, 30.0);
    std::bernoulli_distribution hole(0.25);
    for (int trial = 0; trial < 10; ++trial) {
        DepthImage depth(cfg.channels, cfg.width);
        for (double& v : depth.data()) v = hole(rng) ? 0.0 : dist(rng);
        AngleImage angle = build_angle_image(depth, cfg, 0.01);
        auto seeds = select_seeds(depth, 0.01);
        std::set<std::pair<int, int>> prev;
        for (double beta : {2.0, 5.0, 10.0, 20.0, 45.0, 80.0}) {
            LabelImage labels = label_components(depth, angle, seeds, beta, 10.0, 0.01);
            std::set<std::pair<int, int>> cur;
            for (int r = 0; r < depth.rows(); ++r)
                for (int c = 0; c < depth.cols(); ++c)
                    if (labels(r, c) == 1) cur.insert({r, c});
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = std::move(cur);
        }
    }
}

TEST_CASE("a component crossing the azimuth seam keeps one id") {
    LidarConfig cfg;
    FilterParams params;
    // Wall spanning columns 860..9 through the seam.
    DepthImage depth = wall_depth(cfg, 5.0, 860, 10);
    AngleImage angle = build_angle_image(depth, cfg, params.depth_epsilon);
    auto seeds = select_seeds(depth, params.depth_epsilon);
    LabelImage labels = label_components(depth, angle, seeds, 10.0, 10.0, params.depth_epsilon);
    std::set<int> ids;
    for (int r = 0; r < cfg.channels; ++r) {
        ids.insert(labels(r, 865));
        ids.insert(labels(r, 5));
    }
    REQUIRE(ids.size() == 1);
    CHECK(*ids.begin() >= 2);
}

TEST_CASE("point labels follow pixel labels through the mapper") {
    LabelImage labels(2, 2, 0);
    labels(0, 0) = 1;
    labels(1, 1) = 2;
    DepthMapper mapper(2, 2);
    mapper.points[mapper.index(0, 0)] = {0, 2};
    mapper.retained[mapper.index(0, 0)] = 0;
    mapper.points[mapper.index(1, 1)] = {1};
    mapper.retained[mapper.index(1, 1)] = 1;
    mapper.discarded = {3};
    PointCloud cloud = {{1, 0, 0}, {2, 0, 0}, {1.5, 0, 0}, {99, 0, 0}};

    std::vector<int> pl = point_labels(labels, mapper, cloud.size());
    CHECK(pl == std::vector<int>{1, 2, 1, 0});

    Regions regions = extract_regions(labels, mapper, cloud);
    CHECK(regions.dropped == 1);
    REQUIRE(regions.roi.size() == 1);
    CHECK(regions.roi[0].size() == 1);
    CHECK(regions.roi[0][0].x == 2.0);
    REQUIRE(regions.non_roi.size() == 2);
    CHECK(regions.non_roi[0].x == 1.0);
    CHECK(regions.non_roi[1].x == 1.5);
}

TEST_CASE("all-uninterest labels leave the roi list empty") {
    LabelImage labels(1, 3, 1);
    DepthMapper mapper(1, 3);
    for (int c = 0; c < 3; ++c) {
        mapper.points[c] = {static_cast<std::uint32_t>(c)};
        mapper.retained[c] = static_cast<std::uint32_t>(c);
    }
    PointCloud cloud = {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
    Regions regions = extract_regions(labels, mapper, cloud);
    CHECK(regions.roi.empty());
    CHECK(regions.non_roi.size() == 3);
}
