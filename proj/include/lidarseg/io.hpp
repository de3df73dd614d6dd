#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lidarseg/types.hpp"

namespace lidarseg {

enum class ScanFormat { csv, pcd_ascii };

// Picks by extension (.pcd -> pcd_ascii, anything else csv).
ScanFormat guess_format(const std::string& path);

struct ScanSource {
    ScanFormat format = ScanFormat::csv;
    std::vector<std::string> paths; // ordered, oldest first
    int window_size = 1;
};

struct ReadResult {
    PointCloud cloud;
    std::size_t dropped_nonfinite = 0;
};

// CSV: one `x,y,z` line per point. PCD: ASCII variant only; binary data is
// rejected. Rows with non-finite coordinates are dropped and counted.
ReadResult read_scan(const std::string& path, ScanFormat format);
ReadResult read_scan_csv(std::istream& in);
ReadResult read_scan_pcd(std::istream& in);

// Concatenation of the most recent min(k, clouds.size()) clouds, oldest first.
PointCloud sliding_window(const std::vector<PointCloud>& clouds, int k);

// Text matrix: first line `rows cols`, then one space-separated row per line.
// Doubles are written with enough digits to round-trip exactly.
void write_matrix(std::ostream& out, const Grid<double>& g);
void write_matrix(std::ostream& out, const Grid<int>& g);
Grid<double> read_matrix(std::istream& in);

void write_matrix_file(const std::string& path, const Grid<double>& g);
void write_matrix_file(const std::string& path, const Grid<int>& g);
Grid<double> read_matrix_file(const std::string& path);

// Labeled cloud CSV: `x,y,z,label` per point.
void write_labeled_cloud(std::ostream& out, const PointCloud& cloud, std::span<const int> labels);

std::string format_double(double v); // shortest exact decimal form

} // namespace lidarseg
