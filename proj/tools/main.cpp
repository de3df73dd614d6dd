// Command-line front end: runs the segmentation filter over one scan or a
// directory of scans, with optional intermediate emissions, latency
// benchmarking and camera-space evaluation.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lidarseg/config.hpp"
#include "lidarseg/eval.hpp"
#include "lidarseg/io.hpp"
#include "lidarseg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace lidarseg;

namespace {

struct Options {
    std::string input;
    std::string format = "auto"; // csv | pcd | auto (by extension)
    std::string config_path;
    std::string out_dir = ".";
    std::string emit = "cloud";
    std::string eval_truth_dir;
    std::string camera_path;
    int bench = 0;
    int jobs = 1;
    int window_size = 1; // sliding-window concatenation across input scans
};

ScanFormat pick_format(const std::string& flag, const std::string& path) {
    if (flag == "csv") return ScanFormat::csv;
    if (flag == "pcd") return ScanFormat::pcd_ascii;
    return guess_format(path);
}

std::set<std::string> parse_emit(const std::string& list) {
    static const std::set<std::string> known = {"depth",  "angle",     "smoothed", "filtered",
                                                "processed", "labels", "barcode",  "cloud"};
    std::set<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (!known.count(item))
            throw ConfigError("emit", "unknown emission '" + item + "'");
        out.insert(item);
    }
    return out;
}

void write_barcode_csv(const std::string& path, const Barcode& bc) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << "row,col,birth,death,persistence\n";
    for (const PersistencePair& p : bc.pairs)
        out << p.row << ',' << p.col << ',' << format_double(p.birth) << ','
            << format_double(p.death) << ',' << format_double(p.persistence()) << '\n';
}

void emit_outputs(const Options& opt, const std::set<std::string>& emissions,
                  const std::string& stem, const PointCloud& cloud, const PipelineResult& res) {
    const fs::path dir(opt.out_dir);
    auto at = [&dir, &stem](const char* suffix) { return (dir / (stem + suffix)).string(); };

    if (emissions.count("depth")) write_matrix_file(at(".depth.txt"), res.depth);
    if (emissions.count("filtered")) write_matrix_file(at(".filtered.txt"), res.filtered);
    if (emissions.count("processed")) write_matrix_file(at(".processed.txt"), res.processed);
    if (emissions.count("angle")) write_matrix_file(at(".angle.txt"), res.angle);
    if (emissions.count("smoothed")) write_matrix_file(at(".smoothed.txt"), res.smoothed);
    if (emissions.count("labels")) write_matrix_file(at(".labelimg.txt"), res.labels);
    if (emissions.count("barcode")) write_barcode_csv(at(".barcode.csv"), res.barcode);
    if (emissions.count("cloud")) {
        std::ofstream out(at(".labels.csv"), std::ios::binary);
        if (!out)
            throw IoError("cannot write '" + at(".labels.csv") + "'");
        write_labeled_cloud(out, cloud, res.labels_per_point);
    }
}

void print_timings(const std::string& stem, const StageTimings& t) {
    std::printf("%s: projection %.3f ms, peaks %.3f ms, sharpen %.3f ms, angles %.3f ms, "
                "ssa %.3f ms, segment %.3f ms, total %.3f ms\n",
                stem.c_str(), t.projection_ms, t.peaks_ms, t.sharpen_ms, t.angles_ms, t.ssa_ms,
                t.segment_ms, t.total_ms);
}

std::vector<fs::path> collect_inputs(const std::string& input) {
    std::vector<fs::path> paths;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".csv" || ext == ".pcd") paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
    } else {
        paths.emplace_back(input);
    }
    if (paths.empty())
        throw IoError("no scans found under '" + input + "'");
    return paths;
}

int run(const Options& opt, const LidarConfig& cfg, const FilterParams& params) {
    const std::set<std::string> emissions = parse_emit(opt.emit);
    if (!fs::exists(opt.out_dir)) fs::create_directories(opt.out_dir);

    if (!opt.eval_truth_dir.empty()) {
        CameraModel cam = opt.camera_path.empty() ? CameraModel{} : load_camera(opt.camera_path);
        EvalReport report = evaluate_run(opt.input, opt.eval_truth_dir, cfg, params, cam);
        const std::string report_path = (fs::path(opt.out_dir) / "report.csv").string();
        std::ofstream out(report_path, std::ios::binary);
        if (!out)
            throw IoError("cannot write '" + report_path + "'");
        write_report_csv(out, report);
        std::printf("roi: P %.4f R %.4f F1 %.4f | uninterest: P %.4f R %.4f F1 %.4f (%zu scans)\n",
                    report.roi.mean.precision, report.roi.mean.recall, report.roi.mean.f1,
                    report.uninterest.mean.precision, report.uninterest.mean.recall,
                    report.uninterest.mean.f1, report.scans.size());
        std::printf("report written to %s\n", report_path.c_str());
        return 0;
    }

    std::vector<fs::path> inputs = collect_inputs(opt.input);

    if (opt.bench > 0) {
        // Latency benchmark over the first scan (window-concatenated if asked).
        std::vector<PointCloud> history;
        for (const fs::path& p : inputs) {
            history.push_back(read_scan(p.string(), pick_format(opt.format, p.string())).cloud);
            if (static_cast<int>(history.size()) >= opt.window_size) break;
        }
        PointCloud cloud = sliding_window(history, opt.window_size);
        BenchStats stats = bench_pipeline(cloud, cfg, params, opt.bench);
        std::printf("%d runs over %zu points: %.3f ms +/- %.3f ms\n", stats.runs, cloud.size(),
                    stats.mean_ms, stats.std_ms);
        return 0;
    }

    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;
    std::vector<std::string> failures;
    std::vector<PointCloud> window_history; // only used when jobs == 1

    auto process = [&](const fs::path& path) {
        ReadResult scan = read_scan(path.string(), pick_format(opt.format, path.string()));
        PointCloud cloud;
        if (opt.window_size > 1 && opt.jobs == 1) {
            window_history.push_back(std::move(scan.cloud));
            cloud = sliding_window(window_history, opt.window_size);
        } else {
            cloud = std::move(scan.cloud);
        }
        PipelineResult res = run_pipeline(cloud, cfg, params);
        emit_outputs(opt, emissions, path.stem().string(), cloud, res);
        std::lock_guard<std::mutex> lock(io_mutex);
        if (scan.dropped_nonfinite > 0)
            std::fprintf(stderr, "%s: dropped %zu non-finite rows\n", path.string().c_str(),
                         scan.dropped_nonfinite);
        print_timings(path.stem().string(), res.timings);
    };

    if (opt.jobs <= 1 || inputs.size() == 1) {
        for (const fs::path& p : inputs) process(p);
    } else {
        std::vector<std::thread> pool;
        const int workers = std::min<int>(opt.jobs, static_cast<int>(inputs.size()));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= inputs.size()) return;
                    try {
                        process(inputs[i]);
                    } catch (const Error& e) {
                        std::lock_guard<std::mutex> lock(io_mutex);
                        failures.push_back(inputs[i].string() + ": " + e.what());
                    }
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (!failures.empty()) {
            for (const std::string& f : failures) std::fprintf(stderr, "%s\n", f.c_str());
            return 2;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-time LiDAR scan segmentation into regions of interest/uninterest"};
    Options opt;
    LidarConfig cfg;
    FilterParams params;

    app.add_option("--input", opt.input, "Scan file or directory")->required();
    app.add_option("--format", opt.format, "Input format: csv, pcd or auto")
        ->check(CLI::IsMember({"csv", "pcd", "auto"}));
    app.add_option("--config", opt.config_path, "key = value config file");
    auto* pc_opt = app.add_option("--pc", params.pc, "SVD components kept by the smoother");
    auto* beta_opt = app.add_option("--beta", params.beta_deg, "Ground-removal angle, degrees");
    auto* window_opt = app.add_option("--window", params.window, "SSA window length");
    auto* theta_opt = app.add_option("--theta-seg", params.theta_seg_deg, "ROI BFS angle threshold, degrees");
    auto* pers_opt =
        app.add_option("--persistence", params.persistence_threshold, "Barcode threshold, fraction of span");
    app.add_option("--emit", opt.emit,
                   "Comma list: depth,angle,smoothed,filtered,processed,labels,barcode,cloud");
    app.add_option("--out", opt.out_dir, "Output directory");
    app.add_option("--bench", opt.bench, "Repeat the pipeline N times and print mean +/- std");
    app.add_option("--jobs", opt.jobs, "Worker threads for directory input");
    app.add_option("--window-size", opt.window_size, "Concatenate this many consecutive scans");
    app.add_option("--eval", opt.eval_truth_dir, "Truth-mask directory; scores instead of emitting");
    app.add_option("--camera", opt.camera_path, "Camera file for --eval");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    try {
        // Precedence: command line > config file > built-in defaults.
        if (!opt.config_path.empty()) {
            LidarConfig file_cfg;
            FilterParams file_params;
            apply_config_file(opt.config_path, file_cfg, file_params);
            cfg = file_cfg;
            if (!*pc_opt) params.pc = file_params.pc;
            if (!*beta_opt) params.beta_deg = file_params.beta_deg;
            if (!*window_opt) params.window = file_params.window;
            if (!*theta_opt) params.theta_seg_deg = file_params.theta_seg_deg;
            if (!*pers_opt) params.persistence_threshold = file_params.persistence_threshold;
            params.sigma_x = file_params.sigma_x;
            params.sigma_n = file_params.sigma_n;
            params.depth_epsilon = file_params.depth_epsilon;
        }
        validate(cfg, params);
        if (opt.window_size < 1)
            throw ConfigError("window-size", "must be >= 1");
        return run(opt, cfg, params);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
