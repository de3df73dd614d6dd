#include "lidarseg/scene.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lidarseg {

namespace {

double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

} // namespace

SceneObject SceneObject::ground(double z, double radius) {
    SceneObject o;
    o.kind = Kind::ground_plane;
    o.roi = false;
    o.name = "ground";
    o.plane_z = z;
    o.plane_radius = radius;
    return o;
}

SceneObject SceneObject::box(Point3 min, Point3 max, std::string name, bool roi) {
    SceneObject o;
    o.kind = Kind::box;
    o.roi = roi;
    o.name = std::move(name);
    o.bmin = min;
    o.bmax = max;
    return o;
}

SceneObject SceneObject::quad(Point3 corner, Point3 edge_u, Point3 edge_v, std::string name, bool roi) {
    SceneObject o;
    o.kind = Kind::quad;
    o.roi = roi;
    o.name = std::move(name);
    o.corner = corner;
    o.edge_u = edge_u;
    o.edge_v = edge_v;
    return o;
}

double SceneObject::intersect(const Point3& dir, double t_min) const {
    switch (kind) {
    case Kind::ground_plane: {
        if (std::abs(dir.z) < 1e-12) return -1.0;
        double t = plane_z / dir.z;
        if (t <= t_min) return -1.0;
        double px = t * dir.x, py = t * dir.y;
        if (px * px + py * py > plane_radius * plane_radius) return -1.0;
        return t;
    }
    case Kind::box: {
        double t0 = t_min, t1 = 1e30;
        const double o[3] = {0.0, 0.0, 0.0};
        const double d[3] = {dir.x, dir.y, dir.z};
        const double lo[3] = {bmin.x, bmin.y, bmin.z};
        const double hi[3] = {bmax.x, bmax.y, bmax.z};
        for (int i = 0; i < 3; ++i) {
            if (std::abs(d[i]) < 1e-12) {
                if (o[i] < lo[i] || o[i] > hi[i]) return -1.0;
                continue;
            }
            double ta = (lo[i] - o[i]) / d[i];
            double tb = (hi[i] - o[i]) / d[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return -1.0;
        }
        return t0 > t_min ? t0 : -1.0;
    }
    case Kind::quad: {
        Point3 n = cross(edge_u, edge_v);
        double denom = dot(n, dir);
        if (std::abs(denom) < 1e-12) return -1.0;
        double t = dot(n, corner) / denom;
        if (t <= t_min) return -1.0;
        Point3 p{t * dir.x - corner.x, t * dir.y - corner.y, t * dir.z - corner.z};
        // Solve p = a * edge_u + b * edge_v through the 2x2 Gram system.
        double uu = dot(edge_u, edge_u), uv = dot(edge_u, edge_v), vv = dot(edge_v, edge_v);
        double pu = dot(p, edge_u), pv = dot(p, edge_v);
        double det = uu * vv - uv * uv;
        if (std::abs(det) < 1e-12) return -1.0;
        double a = (pu * vv - pv * uv) / det;
        double b = (pv * uu - pu * uv) / det;
        if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) return -1.0;
        return t;
    }
    }
    return -1.0;
}

SyntheticScan raycast_scene(const Scene& scene, const LidarConfig& cfg, int azimuth_steps,
                            double noise_sigma, std::uint64_t seed) {
    SyntheticScan scan;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);

    const std::vector<double> elev = cfg.elevations_rad();
    for (std::size_t r = 0; r < elev.size(); ++r) {
        const double ce = std::cos(elev[r]);
        const double se = std::sin(elev[r]);
        for (int k = 0; k < azimuth_steps; ++k) {
            const double az = -M_PI + 2.0 * M_PI * k / azimuth_steps;
            const Point3 dir{ce * std::cos(az), ce * std::sin(az), se};

            double best_t = -1.0;
            int best_obj = -1;
            for (std::size_t i = 0; i < scene.objects.size(); ++i) {
                double t = scene.objects[i].intersect(dir, 0.05);
                if (t > 0.0 && t <= scene.max_range && (best_t < 0.0 || t < best_t)) {
                    best_t = t;
                    best_obj = static_cast<int>(i);
                }
            }
            if (best_obj < 0) continue;
            if (noise_sigma > 0.0) best_t = std::max(0.05, best_t + noise(rng));
            scan.cloud.push_back({best_t * dir.x, best_t * dir.y, best_t * dir.z});
            scan.object_id.push_back(best_obj);
            scan.roi_truth.push_back(scene.objects[best_obj].roi);
        }
    }
    return scan;
}

Scene benchmark_scene() {
    Scene s;
    s.objects.push_back(SceneObject::ground(-1.5, 90.0));
    // Wall ahead, tall enough to catch every beam in its columns.
    s.objects.push_back(SceneObject::quad({5.2, -2.5, -1.5}, {0.0, 5.0, 0.0}, {0.0, 0.0, 3.1},
                                          "wall", true));
    // Boxes clear of the wall in azimuth, reaching from the ground past the
    // sensor horizon so their columns hold no ground returns.
    s.objects.push_back(SceneObject::box({3.7, -3.4, -1.5}, {4.5, -2.6, 0.45}, "box_a"));
    s.objects.push_back(SceneObject::box({4.4, 2.9, -1.5}, {5.3, 3.8, 0.4}, "box_b"));
    return s;
}

Scene noisy_benchmark_scene() {
    Scene s = benchmark_scene();
    // Gentle rise to the left: true ground, 8 deg along the look direction.
    s.objects.push_back(SceneObject::quad({-5.0, 5.5, -1.5}, {10.0, 0.0, 0.0},
                                          {0.0, 9.0, 9.0 * std::tan(deg2rad(8.0))},
                                          "slope", false));
    // Steep embankment to the right: region of interest at 11.5 deg.
    s.objects.push_back(SceneObject::quad({-4.5, -6.0, -1.5}, {9.0, 0.0, 0.0},
                                          {0.0, -5.0, 5.0 * std::tan(deg2rad(11.5))},
                                          "embankment", true));
    return s;
}

Scene room_scene() {
    Scene s;
    s.objects.push_back(SceneObject::ground(-1.5, 60.0));
    const double half = 28.0, top = 9.0;
    s.objects.push_back(SceneObject::quad({half, -half, -1.5}, {0, 2 * half, 0}, {0, 0, top + 1.5}, "wall_x+", true));
    s.objects.push_back(SceneObject::quad({-half, -half, -1.5}, {0, 2 * half, 0}, {0, 0, top + 1.5}, "wall_x-", true));
    s.objects.push_back(SceneObject::quad({-half, half, -1.5}, {2 * half, 0, 0}, {0, 0, top + 1.5}, "wall_y+", true));
    s.objects.push_back(SceneObject::quad({-half, -half, -1.5}, {2 * half, 0, 0}, {0, 0, top + 1.5}, "wall_y-", true));
    s.objects.push_back(SceneObject::box({6.0, -1.0, -1.5}, {7.0, 0.0, 2.0}, "pillar_a"));
    s.objects.push_back(SceneObject::box({-3.0, 4.0, -1.5}, {-2.0, 5.0, 1.5}, "pillar_b"));
    return s;
}

} // namespace lidarseg
