#include "lidarseg/segment.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace lidarseg {

std::vector<Pixel> select_seeds(const DepthImage& depth, double depth_epsilon) {
    std::vector<Pixel> seeds;
    for (int c = 0; c < depth.cols(); ++c) {
        int first = -1;   // first valid pixel, scanning bottom-up
        int closest = -1; // valid pixel with the smallest depth
        double closest_depth = 0.0;
        for (int r = depth.rows() - 1; r >= 0; --r) {
            double d = depth(r, c);
            if (d <= depth_epsilon) continue;
            if (first < 0) first = r;
            if (closest < 0 || d < closest_depth) {
                closest = r;
                closest_depth = d;
            }
        }
        if (first >= 0) seeds.push_back({first, c});
        if (closest >= 0 && closest != first) seeds.push_back({closest, c});
    }
    return seeds;
}

namespace {

class Labeler {
public:
    Labeler(const DepthImage& depth, const AngleImage& smoothed, double depth_epsilon)
        : depth_(depth), angle_(smoothed), eps_(depth_epsilon),
          labels_(depth.rows(), depth.cols(), 0) {}

    bool valid(int r, int c) const { return depth_(r, c) > eps_; }

    // Smoothed angle of the vertical edge under the pixel, clamped at the
    // bottom row; doubles as the pixel's own surface angle and as the edge
    // angle of horizontal moves.
    double pixel_angle(int r, int c) const { return angle_(std::min(r, angle_.rows() - 1), c); }

    // Angle of the edge crossed when stepping from (r, c) to (nr, nc).
    double edge_angle(int r, int c, int nr, int nc) const {
        if (nc != c) return pixel_angle(nr, nc);
        return angle_(std::min(r, nr), c); // vertical move: the edge between the rows
    }

    // Fixed order: up, down, left, right; columns wrap, rows clamp.
    template <typename F>
    void for_neighbors(int r, int c, F&& f) const {
        const int cols = depth_.cols();
        if (r > 0) f(r - 1, c);
        if (r + 1 < depth_.rows()) f(r + 1, c);
        f(r, c == 0 ? cols - 1 : c - 1);
        f(r, c + 1 == cols ? 0 : c + 1);
    }

    void grow_uninterest(std::span<const Pixel> seeds, double beta_rad) {
        std::deque<Pixel> queue;
        for (const Pixel& s : seeds) {
            if (!valid(s.row, s.col) || labels_(s.row, s.col) != 0) continue;
            if (pixel_angle(s.row, s.col) >= beta_rad) continue;
            labels_(s.row, s.col) = 1;
            queue.push_back(s);
        }
        while (!queue.empty()) {
            Pixel p = queue.front();
            queue.pop_front();
            for_neighbors(p.row, p.col, [&](int nr, int nc) {
                if (!valid(nr, nc) || labels_(nr, nc) != 0) return;
                if (edge_angle(p.row, p.col, nr, nc) >= beta_rad) return;
                labels_(nr, nc) = 1;
                queue.push_back({nr, nc});
            });
        }
    }

    void grow_component(Pixel start, int id, double theta_rad) {
        std::deque<Pixel> queue;
        labels_(start.row, start.col) = id;
        queue.push_back(start);
        while (!queue.empty()) {
            Pixel p = queue.front();
            queue.pop_front();
            double own = pixel_angle(p.row, p.col);
            for_neighbors(p.row, p.col, [&](int nr, int nc) {
                if (!valid(nr, nc) || labels_(nr, nc) != 0) return;
                if (std::abs(edge_angle(p.row, p.col, nr, nc) - own) >= theta_rad) return;
                labels_(nr, nc) = id;
                queue.push_back({nr, nc});
            });
        }
    }

    LabelImage run(std::span<const Pixel> seeds, double beta_rad, double theta_rad) {
        grow_uninterest(seeds, beta_rad);
        int next_id = 2;
        for (const Pixel& s : seeds)
            if (valid(s.row, s.col) && labels_(s.row, s.col) == 0)
                grow_component(s, next_id++, theta_rad);
        for (int r = 0; r < depth_.rows(); ++r)
            for (int c = 0; c < depth_.cols(); ++c)
                if (valid(r, c) && labels_(r, c) == 0)
                    grow_component({r, c}, next_id++, theta_rad);
        return std::move(labels_);
    }

private:
    const DepthImage& depth_;
    const AngleImage& angle_;
    double eps_;
    LabelImage labels_;
};

} // namespace

LabelImage label_components(const DepthImage& depth, const AngleImage& smoothed,
                            std::span<const Pixel> seeds, double beta_deg,
                            double theta_seg_deg, double depth_epsilon) {
    if (smoothed.rows() != depth.rows() - 1 || smoothed.cols() != depth.cols())
        throw DimensionMismatchError("angle image must be (rows-1) x cols of the depth image");
    Labeler labeler(depth, smoothed, depth_epsilon);
    return labeler.run(seeds, deg2rad(beta_deg), deg2rad(theta_seg_deg));
}

std::vector<int> point_labels(const LabelImage& labels, const DepthMapper& mapper,
                              std::size_t cloud_size) {
    if (labels.rows() != mapper.rows || labels.cols() != mapper.cols)
        throw DimensionMismatchError("label image and depth mapper shapes differ");
    std::vector<int> out(cloud_size, 0);
    for (int r = 0; r < labels.rows(); ++r)
        for (int c = 0; c < labels.cols(); ++c) {
            int label = labels(r, c);
            if (label == 0) continue;
            for (std::uint32_t idx : mapper.at(r, c)) out[idx] = label;
        }
    return out;
}

Regions extract_regions(const LabelImage& labels, const DepthMapper& mapper,
                        const PointCloud& cloud) {
    Regions regions;
    regions.dropped = mapper.discarded.size();
    int max_label = 0;
    for (int v : labels.data()) max_label = std::max(max_label, v);
    if (max_label >= 2) regions.roi.resize(max_label - 1);

    std::vector<int> labels_per_point = point_labels(labels, mapper, cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        int label = labels_per_point[i];
        if (label == 1)
            regions.non_roi.push_back(cloud[i]);
        else if (label >= 2)
            regions.roi[label - 2].push_back(cloud[i]);
    }
    return regions;
}

} // namespace lidarseg
