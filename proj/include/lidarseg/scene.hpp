#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lidarseg/types.hpp"

namespace lidarseg {

// Ray-castable primitive with a ground-truth class. Rays start at the sensor
// origin.
struct SceneObject {
    enum class Kind { ground_plane, box, quad };

    Kind kind = Kind::ground_plane;
    bool roi = false; // true: region of interest, false: uninterest (ground-like)
    std::string name;

    double plane_z = 0.0, plane_radius = 0.0; // ground_plane
    Point3 bmin, bmax;                        // box (axis-aligned)
    Point3 corner, edge_u, edge_v;            // quad (planar patch)

    static SceneObject ground(double z, double radius);
    static SceneObject box(Point3 min, Point3 max, std::string name, bool roi = true);
    static SceneObject quad(Point3 corner, Point3 edge_u, Point3 edge_v, std::string name, bool roi);

    // Smallest t > t_min with origin + t * dir inside the object, or -1.
    double intersect(const Point3& dir, double t_min) const;
};

struct Scene {
    std::vector<SceneObject> objects;
    double max_range = 120.0;
};

// One return per (beam, azimuth step): the nearest object hit, with optional
// radial Gaussian noise (fixed seed, deterministic). Provenance records the
// object index per point.
struct SyntheticScan {
    PointCloud cloud;
    std::vector<int> object_id; // index into Scene::objects
    std::vector<bool> roi_truth;
};

SyntheticScan raycast_scene(const Scene& scene, const LidarConfig& cfg, int azimuth_steps,
                            double noise_sigma = 0.0, std::uint64_t seed = 1);

// Flat ground at -1.5 m, one wall ahead and two boxes, all near enough to
// fill their columns top to bottom. Cleanly separable by the default
// parameters.
Scene benchmark_scene();

// benchmark_scene plus a gently sloped ground patch (8 deg) and a steep
// embankment (11.5 deg, region of interest); meant to be run with noise.
Scene noisy_benchmark_scene();

// Closed room (ground, four walls, two pillars): every beam returns, giving
// a full-size scan for latency runs.
Scene room_scene();

} // namespace lidarseg
