#pragma once

#include <vector>

#include "lidarseg/types.hpp"

namespace lidarseg {

// One detected maximum: the component it spawns in the superlevel filtration
// is born at `birth` (its intensity) and absorbed at `death`.
struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;
    int row = 0;
    int col = 0;

    double persistence() const { return birth - death; }
    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct Barcode {
    std::vector<PersistencePair> pairs; // persistence descending, then (row, col)
    double global_max = 0.0;            // over positive pixels
    double global_min = 0.0;            // over the raw grid (0 when no-return pixels exist)

    double span() const { return global_max - global_min; }
};

struct PersistenceOptions {
    int connectivity = 8;     // 4 or 8
    bool wrap_columns = true; // azimuth seam is adjacent
    bool per_row = false;     // independent 1-D filtration per row
};

// 0-dimensional superlevel-set persistence of a non-negative grid.
//
// Pixels with value <= 0 (no return) take no part in the filtration. Pixels
// are visited in decreasing intensity, ties broken by (row, col); a component
// is born at each local maximum, and when two components meet the younger one
// (smaller birth, ties by birth pixel order) dies at the meeting intensity.
// Plateau merges (birth == death) are not reported, so a flat maximal region
// contributes exactly one pair, located at its lexicographically smallest
// pixel. Components that never merge die at the grid's global minimum.
//
// Throws EmptyImageError when no positive pixel exists.
Barcode persistence_maxima(const Grid<double>& img, const PersistenceOptions& opt = {});

// Keeps pairs with persistence >= fraction * span. The global-maximum pair
// has persistence equal to the span, so it survives any fraction <= 1.
Barcode filter_barcode(const Barcode& bc, double fraction);

// Maxima locations in ascending (row, col) order, the order the sharpening
// stage consumes them in.
std::vector<Pixel> maxima_locations(const Barcode& bc);

} // namespace lidarseg
