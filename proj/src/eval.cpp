#include "lidarseg/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lidarseg/config.hpp"
#include "lidarseg/io.hpp"
#include "lidarseg/pipeline.hpp"

namespace fs = std::filesystem;

namespace lidarseg {

void validate(const CameraModel& cam) {
    if (!(cam.fx > 0.0))
        throw ConfigError("fx", "must be > 0");
    if (!(cam.fy > 0.0))
        throw ConfigError("fy", "must be > 0");
    if (cam.width < 1 || cam.height < 1)
        throw ConfigError("width", "image size must be positive");
    // Rotation block must satisfy R^t R = I within 1e-6.
    const auto& e = cam.extrinsic;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0.0;
            for (int k = 0; k < 3; ++k) dot += e[k * 4 + i] * e[k * 4 + j];
            if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-6)
                throw ConfigError("extrinsic", "rotation block is not orthonormal");
        }
}

CameraModel load_camera(const std::string& path) {
    CameraModel cam;
    for (const auto& [key, value] : read_key_values_file(path)) {
        if (key == "fx") cam.fx = parse_double(key, value);
        else if (key == "fy") cam.fy = parse_double(key, value);
        else if (key == "cx") cam.cx = parse_double(key, value);
        else if (key == "cy") cam.cy = parse_double(key, value);
        else if (key == "width") cam.width = parse_int(key, value);
        else if (key == "height") cam.height = parse_int(key, value);
        else if (key == "extrinsic") {
            std::vector<double> v = parse_double_list(key, value);
            if (v.size() != 16)
                throw ConfigError(key, "expected 16 row-major floats, got " + std::to_string(v.size()));
            std::copy(v.begin(), v.end(), cam.extrinsic.begin());
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    validate(cam);
    return cam;
}

Prf1 prf1(const Mask& predicted, const Mask& truth) {
    if (!predicted.same_shape(truth))
        throw DimensionMismatchError("mask shapes differ");
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predicted.data().size(); ++i) {
        bool p = predicted.data()[i] != 0;
        bool t = truth.data()[i] != 0;
        tp += p && t;
        fp += p && !t;
        fn += !p && t;
    }
    Prf1 out;
    out.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    out.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    double pr = out.precision + out.recall;
    out.f1 = pr > 0.0 ? 2.0 * out.precision * out.recall / pr : 0.0;
    return out;
}

ProjectedMasks project_labels(const PointCloud& cloud, std::span<const int> labels,
                              const CameraModel& cam, int dilation_radius) {
    ProjectedMasks masks{Mask(cam.height, cam.width, 0), Mask(cam.height, cam.width, 0), 0};
    const auto& e = cam.extrinsic;
    const int rad = std::max(0, dilation_radius);
    const int rad2 = rad * rad;

    for (std::size_t i = 0; i < cloud.size() && i < labels.size(); ++i) {
        const int label = labels[i];
        if (label < 1) continue;
        const Point3& p = cloud[i];
        const double X = e[0] * p.x + e[1] * p.y + e[2] * p.z + e[3];
        const double Y = e[4] * p.x + e[5] * p.y + e[6] * p.z + e[7];
        const double Z = e[8] * p.x + e[9] * p.y + e[10] * p.z + e[11];
        if (Z <= 0.0) {
            ++masks.dropped;
            continue;
        }
        const long u = std::lround(cam.fx * X / Z + cam.cx);
        const long v = std::lround(cam.fy * Y / Z + cam.cy);
        if (u < 0 || u >= cam.width || v < 0 || v >= cam.height) {
            ++masks.dropped;
            continue;
        }
        Mask& mask = label >= 2 ? masks.roi : masks.uninterest;
        for (int dy = -rad; dy <= rad; ++dy) {
            const int py = static_cast<int>(v) + dy;
            if (py < 0 || py >= cam.height) continue;
            for (int dx = -rad; dx <= rad; ++dx) {
                if (dx * dx + dy * dy > rad2) continue;
                const int px = static_cast<int>(u) + dx;
                if (px < 0 || px >= cam.width) continue;
                mask(py, px) = 1;
            }
        }
    }
    // ROI wins overlapping pixels.
    for (std::size_t i = 0; i < masks.roi.data().size(); ++i)
        if (masks.roi.data()[i]) masks.uninterest.data()[i] = 0;
    return masks;
}

namespace {

int pgm_next_value(std::istream& in, bool& ok) {
    // Skips whitespace and `#` comments between header tokens.
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v = -1;
    ok = static_cast<bool>(in >> v);
    return v;
}

} // namespace

Mask read_pgm(std::istream& in) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
        throw ParseError(1, "not a P2/P5 PGM file");
    const bool binary = magic[1] == '5';
    bool ok = false;
    int width = pgm_next_value(in, ok);
    if (!ok || width < 1) throw ParseError(1, "bad PGM width");
    int height = pgm_next_value(in, ok);
    if (!ok || height < 1) throw ParseError(1, "bad PGM height");
    int maxval = pgm_next_value(in, ok);
    if (!ok || maxval < 1 || maxval > 65535) throw ParseError(1, "bad PGM maxval");

    Mask mask(height, width, 0);
    if (binary) {
        in.get(); // single whitespace after maxval
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> row(static_cast<std::size_t>(width) * bytes);
        for (int r = 0; r < height; ++r) {
            in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
            if (!in) throw ParseError(r + 1, "truncated PGM data");
            for (int c = 0; c < width; ++c) {
                int v = bytes == 1 ? row[c] : (row[2 * c] << 8) | row[2 * c + 1];
                mask(r, c) = v != 0;
            }
        }
    } else {
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c) {
                int v = pgm_next_value(in, ok);
                if (!ok) throw ParseError(r + 1, "truncated PGM data");
                mask(r, c) = v != 0;
            }
    }
    return mask;
}

Mask read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return read_pgm(in);
}

namespace {

// Compensated (Kahan) mean so the aggregate is order-insensitive in practice.
double kahan_mean(const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double sq = 0.0;
    for (double x : v) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(v.size() - 1));
}

} // namespace

ClassSummary summarize_scores(const std::vector<Prf1>& scores) {
    std::vector<double> p, r, f;
    for (const Prf1& s : scores) {
        p.push_back(s.precision);
        r.push_back(s.recall);
        f.push_back(s.f1);
    }
    ClassSummary out;
    out.mean = {kahan_mean(p), kahan_mean(r), kahan_mean(f)};
    out.stddev = {sample_std(p, out.mean.precision), sample_std(r, out.mean.recall),
                  sample_std(f, out.mean.f1)};
    return out;
}

EvalReport evaluate_run(const std::string& scan_dir, const std::string& truth_dir,
                        const LidarConfig& cfg, const FilterParams& params,
                        const CameraModel& cam, int dilation_radius) {
    validate(cfg, params);
    validate(cam);

    std::vector<fs::path> scans;
    for (const auto& entry : fs::directory_iterator(scan_dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext == ".csv" || ext == ".pcd") scans.push_back(entry.path());
    }
    std::sort(scans.begin(), scans.end());
    if (scans.empty())
        throw IoError("no .csv or .pcd scans in '" + scan_dir + "'");

    EvalReport report;
    std::vector<Prf1> roi_scores, rou_scores;
    for (const fs::path& scan_path : scans) {
        const std::string stem = scan_path.stem().string();
        const fs::path roi_truth = fs::path(truth_dir) / (stem + ".roi.pgm");
        const fs::path rou_truth = fs::path(truth_dir) / (stem + ".rou.pgm");
        if (!fs::exists(roi_truth) || !fs::exists(rou_truth))
            throw MissingTruthError(stem);

        ReadResult scan = read_scan(scan_path.string(), guess_format(scan_path.string()));
        PipelineResult res = run_pipeline(scan.cloud, cfg, params);
        ProjectedMasks masks = project_labels(scan.cloud, res.labels_per_point, cam, dilation_radius);

        ScanScores scores;
        scores.stem = stem;
        scores.roi = prf1(masks.roi, read_pgm_file(roi_truth.string()));
        scores.uninterest = prf1(masks.uninterest, read_pgm_file(rou_truth.string()));
        roi_scores.push_back(scores.roi);
        rou_scores.push_back(scores.uninterest);
        report.scans.push_back(std::move(scores));
    }
    report.roi = summarize_scores(roi_scores);
    report.uninterest = summarize_scores(rou_scores);
    return report;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
    out << "scan,class,precision,recall,f1\n";
    auto row = [&out](const std::string& scan, const char* cls, const Prf1& s) {
        out << scan << ',' << cls << ',' << format_double(s.precision) << ','
            << format_double(s.recall) << ',' << format_double(s.f1) << '\n';
    };
    for (const ScanScores& s : report.scans) {
        row(s.stem, "roi", s.roi);
        row(s.stem, "uninterest", s.uninterest);
    }
    row("mean", "roi", report.roi.mean);
    row("std", "roi", report.roi.stddev);
    row("mean", "uninterest", report.uninterest.mean);
    row("std", "uninterest", report.uninterest.stddev);
}

} // namespace lidarseg
