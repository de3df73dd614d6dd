// End-to-end checks of the command-line tool (spawned as a child process).
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lidarseg/eval.hpp"
#include "lidarseg/io.hpp"
#include "lidarseg/pipeline.hpp"
#include "lidarseg/scene.hpp"

using namespace lidarseg;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(LIDARSEG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_scan_csv(const fs::path& p, const PointCloud& cloud) {
    std::ofstream out(p);
    for (const Point3& pt : cloud)
        out << format_double(pt.x) << ',' << format_double(pt.y) << ','
            << format_double(pt.z) << '\n';
}

} // namespace

TEST_CASE("cli: unknown flag exits 1, missing file exits 2") {
    CHECK(run_cli("--definitely-not-a-flag") == 1);
    CHECK(run_cli("--input /nonexistent/scan.csv --format csv") == 2);
}

TEST_CASE("cli: default emission writes <stem>.labels.csv") {
    TempDir tmp("lidarseg_cli_default");
    LidarConfig cfg;
    SyntheticScan scan = raycast_scene(benchmark_scene(), cfg, cfg.width);
    write_scan_csv(tmp.path / "scan.csv", scan.cloud);

    int rc = run_cli("--input " + (tmp.path / "scan.csv").string() + " --format csv --out " +
                     (tmp.path / "out").string());
    CHECK(rc == 0);
    CHECK(fs::exists(tmp.path / "out" / "scan.labels.csv"));

    // One 'x,y,z,label' row per point.
    std::ifstream in(tmp.path / "out" / "scan.labels.csv");
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == scan.cloud.size());
}

TEST_CASE("cli: emissions produce the requested artifacts") {
    TempDir tmp("lidarseg_cli_emit");
    LidarConfig cfg;
    SyntheticScan scan = raycast_scene(benchmark_scene(), cfg, cfg.width);
    write_scan_csv(tmp.path / "s.csv", scan.cloud);

    int rc = run_cli("--input " + (tmp.path / "s.csv").string() +
                     " --emit depth,angle,smoothed,filtered,processed,labels,barcode,cloud" +
                     " --out " + (tmp.path / "out").string());
    CHECK(rc == 0);
    for (const char* name : {"s.depth.txt", "s.angle.txt", "s.smoothed.txt", "s.filtered.txt",
                             "s.processed.txt", "s.labelimg.txt", "s.barcode.csv", "s.labels.csv"})
        CHECK(fs::exists(tmp.path / "out" / name));

    Grid<double> depth = read_matrix_file((tmp.path / "out" / "s.depth.txt").string());
    CHECK(depth.rows() == cfg.channels);
    CHECK(depth.cols() == cfg.width);

    std::string barcode = slurp(tmp.path / "out" / "s.barcode.csv");
    CHECK(barcode.rfind("row,col,birth,death,persistence\n", 0) == 0);

    CHECK(run_cli("--input " + (tmp.path / "s.csv").string() + " --emit bogus") == 1);
}

TEST_CASE("cli: flag precedence is command line > config file > defaults") {
    TempDir tmp("lidarseg_cli_precedence");
    LidarConfig cfg;
    SyntheticScan scan = raycast_scene(noisy_benchmark_scene(), cfg, cfg.width, 0.02, 5);
    write_scan_csv(tmp.path / "s.csv", scan.cloud);

    // Config file pushes every tunable off its default.
    std::ofstream(tmp.path / "off.conf") << "filter.pc = 2\n"
                                            "filter.beta = 25\n"
                                            "filter.window = 4\n"
                                            "segment.theta_seg = 30\n"
                                            "peaks.persistence_threshold = 0.5\n";
    const std::string scan_arg = "--input " + (tmp.path / "s.csv").string() + " --emit cloud,labels --out ";

    CHECK(run_cli(scan_arg + (tmp.path / "defaults").string()) == 0);
    CHECK(run_cli(scan_arg + (tmp.path / "conf").string() + " --config " +
                  (tmp.path / "off.conf").string()) == 0);
    // Flags restore the defaults over the config file, parameter by parameter.
    CHECK(run_cli(scan_arg + (tmp.path / "override").string() + " --config " +
                  (tmp.path / "off.conf").string() +
                  " --pc 5 --beta 10 --window 8 --theta-seg 10 --persistence 0.1") == 0);

    std::string def = slurp(tmp.path / "defaults" / "s.labels.csv");
    std::string conf = slurp(tmp.path / "conf" / "s.labels.csv");
    std::string over = slurp(tmp.path / "override" / "s.labels.csv");
    CHECK(def != conf);  // the config file changed the outcome
    CHECK(def == over);  // the flags won it back
    CHECK(def == slurp(tmp.path / "override" / "s.labels.csv"));

    std::string def_img = slurp(tmp.path / "defaults" / "s.labelimg.txt");
    std::string over_img = slurp(tmp.path / "override" / "s.labelimg.txt");
    CHECK(def_img == over_img);
}

TEST_CASE("cli: bench prints mean and std") {
    TempDir tmp("lidarseg_cli_bench");
    LidarConfig cfg;
    SyntheticScan scan = raycast_scene(benchmark_scene(), cfg, cfg.width);
    write_scan_csv(tmp.path / "s.csv", scan.cloud);

    std::string cmd = std::string(LIDARSEG_CLI_PATH) + " --input " + (tmp.path / "s.csv").string() +
                      " --bench 3 > " + (tmp.path / "bench.txt").string() + " 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::string out = slurp(tmp.path / "bench.txt");
    CHECK(out.find("3 runs") != std::string::npos);
    CHECK(out.find("+/-") != std::string::npos);
}

TEST_CASE("cli: eval mode scores scans and writes report.csv") {
    TempDir tmp("lidarseg_cli_eval");
    LidarConfig cfg;
    FilterParams params;
    SyntheticScan scan = raycast_scene(benchmark_scene(), cfg, cfg.width);
    fs::create_directories(tmp.path / "scans");
    fs::create_directories(tmp.path / "truth");
    write_scan_csv(tmp.path / "scans" / "s0.csv", scan.cloud);

    CameraModel cam;
    cam.extrinsic = {0, -1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0, 1};
    std::ofstream(tmp.path / "cam.txt")
        << "fx = 500\nfy = 500\ncx = 320\ncy = 240\nwidth = 640\nheight = 480\n"
           "extrinsic = 0,-1,0,0, 0,0,-1,0, 1,0,0,0, 0,0,0,1\n";

    // Truth straight from the pipeline's own projection: scores must be 1.
    PipelineResult res = run_pipeline(scan.cloud, cfg, params);
    ProjectedMasks masks = project_labels(scan.cloud, res.labels_per_point, cam, 2);
    auto dump_pgm = [](const fs::path& path, const Mask& m) {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
        for (std::uint8_t v : m.data()) out.put(v ? char(255) : char(0));
    };
    dump_pgm(tmp.path / "truth" / "s0.roi.pgm", masks.roi);
    dump_pgm(tmp.path / "truth" / "s0.rou.pgm", masks.uninterest);

    int rc = run_cli("--input " + (tmp.path / "scans").string() + " --eval " +
                     (tmp.path / "truth").string() + " --camera " + (tmp.path / "cam.txt").string() +
                     " --out " + (tmp.path / "out").string());
    CHECK(rc == 0);
    std::string report = slurp(tmp.path / "out" / "report.csv");
    CHECK(report.rfind("scan,class,precision,recall,f1\n", 0) == 0);
    CHECK(report.find("s0,roi,1,1,1") != std::string::npos);
    CHECK(report.find("s0,uninterest,1,1,1") != std::string::npos);
}

TEST_CASE("cli: directory input with jobs writes one output per scan") {
    TempDir tmp("lidarseg_cli_jobs");
    LidarConfig cfg;
    SyntheticScan scan = raycast_scene(benchmark_scene(), cfg, cfg.width);
    fs::create_directories(tmp.path / "scans");
    for (int i = 0; i < 4; ++i)
        write_scan_csv(tmp.path / "scans" / ("scan" + std::to_string(i) + ".csv"), scan.cloud);

    int rc = run_cli("--input " + (tmp.path / "scans").string() + " --jobs 3 --out " +
                     (tmp.path / "out").string());
    CHECK(rc == 0);
    std::string first = slurp(tmp.path / "out" / "scan0.labels.csv");
    CHECK_FALSE(first.empty());
    for (int i = 1; i < 4; ++i)
        CHECK(slurp(tmp.path / "out" / ("scan" + std::to_string(i) + ".labels.csv")) == first);
}
