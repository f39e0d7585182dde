#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "bohemian/jobs.hpp"

using namespace bohemian;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("bohemian_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

FamilySpec small_symmetric() {
    return FamilySpec(FamilyKind::Symmetric, 3, Population({gauss(-1, 1), gauss(-1, -1)}));
}

}  // namespace

TEST_CASE("size task reports the family size") {
    TempDir dir("size");
    JobConfig cfg;
    cfg.task = Task::Size;
    cfg.family = FamilySpec(FamilyKind::Symmetric, 6, Population({gauss(-1, 1), gauss(-1, -1)}));
    cfg.out_dir = dir.path.string();
    auto sum = run(cfg);
    REQUIRE(sum.get("family_size") == "2097152");
}

TEST_CASE("eigs CSV format and determinism") {
    TempDir dir("eigs");
    JobConfig cfg;
    cfg.task = Task::Eigs;
    cfg.family = small_symmetric();
    cfg.out_dir = (dir.path / "a").string();
    run(cfg);
    auto a = slurp(dir.path / "a" / "eigenvalues.csv");
    cfg.out_dir = (dir.path / "b").string();
    run(cfg);
    auto b = slurp(dir.path / "b" / "eigenvalues.csv");
    REQUIRE(a == b);
    REQUIRE_FALSE(a.empty());
    // 64 matrices x 3 eigenvalues
    REQUIRE(std::count(a.begin(), a.end(), '\n') == 192);
    // each line is "re,im"
    std::istringstream lines(a);
    std::string line;
    while (std::getline(lines, line)) REQUIRE(std::count(line.begin(), line.end(), ',') == 1);
}

TEST_CASE("sampled eigs with index column") {
    TempDir dir("eigsidx");
    JobConfig cfg;
    cfg.task = Task::Eigs;
    cfg.family = small_symmetric();
    cfg.sampled = true;
    cfg.seed = 5;
    cfg.count = 10;
    cfg.csv_index = true;
    cfg.out_dir = dir.path.string();
    run(cfg);
    auto csv = slurp(dir.path / "eigenvalues.csv");
    std::istringstream lines(csv);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        REQUIRE(std::count(line.begin(), line.end(), ',') == 2);
        ++rows;
    }
    REQUIRE(rows == 30);
}

TEST_CASE("density task produces a deterministic ppm and grid") {
    TempDir dir("density");
    JobConfig cfg;
    cfg.task = Task::Density;
    cfg.family = small_symmetric();
    cfg.window = {-4, 1, -4, 4};
    cfg.grid_w = 32;
    cfg.grid_h = 32;
    cfg.palette = "viridis";
    cfg.out_dir = (dir.path / "a").string();
    auto sum = run(cfg);
    REQUIRE(sum.get("points_in") != "0");
    auto ppm_a = slurp(dir.path / "a" / "density.ppm");
    auto grid_a = slurp(dir.path / "a" / "density.grid");
    cfg.out_dir = (dir.path / "b").string();
    run(cfg);
    REQUIRE(slurp(dir.path / "b" / "density.ppm") == ppm_a);
    REQUIRE(slurp(dir.path / "b" / "density.grid") == grid_a);
}

TEST_CASE("empty sample gives a background-only image") {
    TempDir dir("empty");
    JobConfig cfg;
    cfg.task = Task::Density;
    cfg.family = small_symmetric();
    cfg.sampled = true;
    cfg.count = 0;
    cfg.grid_w = 8;
    cfg.grid_h = 8;
    cfg.out_dir = dir.path.string();
    auto sum = run(cfg);
    REQUIRE(sum.get("points_in") == "0");
    auto grid = load_grid((dir.path / "density.grid").string());
    for (auto c : grid.counts) REQUIRE(c == 0);
}

TEST_CASE("sharded runs merge to the unsharded result exactly") {
    TempDir dir("shard");
    SECTION("census") {
        JobConfig cfg;
        cfg.task = Task::Stability;
        cfg.family = small_symmetric();
        cfg.out_dir = (dir.path / "whole").string();
        run(cfg);
        for (unsigned s = 0; s < 2; ++s) {
            cfg.shard = {s, 2};
            cfg.out_dir = (dir.path / "parts").string();
            run(cfg);
        }
        merge_outputs({(dir.path / "parts" / "census.shard0of2.json").string(),
                       (dir.path / "parts" / "census.shard1of2.json").string()},
                      (dir.path / "merged").string());
        REQUIRE(slurp(dir.path / "merged" / "census.json") ==
                slurp(dir.path / "whole" / "census.json"));
        REQUIRE(slurp(dir.path / "merged" / "census.csv") ==
                slurp(dir.path / "whole" / "census.csv"));
    }
    SECTION("density with splatting, four shards") {
        JobConfig cfg;
        cfg.task = Task::Density;
        cfg.family = small_symmetric();
        cfg.splat = true;
        cfg.window = {-4, 1, -4, 4};
        cfg.grid_w = 16;
        cfg.grid_h = 16;
        cfg.palette = "copper";
        cfg.out_dir = (dir.path / "dwhole").string();
        run(cfg);
        std::vector<std::string> parts;
        for (unsigned s = 0; s < 4; ++s) {
            cfg.shard = {s, 4};
            cfg.out_dir = (dir.path / "dparts").string();
            run(cfg);
            parts.push_back(
                (dir.path / "dparts" / ("density.shard" + std::to_string(s) + "of4.grid")).string());
        }
        merge_outputs(parts, (dir.path / "dmerged").string(), "copper");
        REQUIRE(slurp(dir.path / "dmerged" / "density.grid") ==
                slurp(dir.path / "dwhole" / "density.grid"));
        REQUIRE(slurp(dir.path / "dmerged" / "density.ppm") ==
                slurp(dir.path / "dwhole" / "density.ppm"));
    }
    SECTION("merging a single shard is the identity") {
        JobConfig cfg;
        cfg.task = Task::Density;
        cfg.family = small_symmetric();
        cfg.window = {-4, 1, -4, 4};
        cfg.grid_w = 8;
        cfg.grid_h = 8;
        cfg.out_dir = (dir.path / "one").string();
        run(cfg);
        merge_outputs({(dir.path / "one" / "density.grid").string()},
                      (dir.path / "one_merged").string());
        REQUIRE(slurp(dir.path / "one_merged" / "density.grid") ==
                slurp(dir.path / "one" / "density.grid"));
    }
    SECTION("multi-worker run equals single-worker run byte for byte") {
        JobConfig cfg;
        cfg.task = Task::Density;
        cfg.family = small_symmetric();
        cfg.splat = true;
        cfg.window = {-4, 1, -4, 4};
        cfg.grid_w = 16;
        cfg.grid_h = 16;
        cfg.workers = 1;
        cfg.out_dir = (dir.path / "w1").string();
        run(cfg);
        cfg.workers = 3;
        cfg.out_dir = (dir.path / "w3").string();
        run(cfg);
        REQUIRE(slurp(dir.path / "w3" / "density.grid") == slurp(dir.path / "w1" / "density.grid"));
    }
}

TEST_CASE("schmidt-spitzer task writes curve and envelope csv") {
    TempDir dir("ss");
    JobConfig cfg;
    cfg.task = Task::SchmidtSpitzer;
    cfg.symbol_t = {cplx(1.0)};
    cfg.rho = 1.5;
    cfg.phi_count = 41;
    cfg.out_dir = (dir.path / "a").string();
    auto sum = run(cfg);
    REQUIRE(sum.get("accepted") == "80");
    auto curve = slurp(dir.path / "a" / "curve.csv");
    REQUIRE(curve.rfind("phi,re,im,accepted\n", 0) == 0);
    cfg.out_dir = (dir.path / "b").string();
    run(cfg);
    REQUIRE(slurp(dir.path / "b" / "curve.csv") == curve);
    REQUIRE(slurp(dir.path / "b" / "envelope.csv") == slurp(dir.path / "a" / "envelope.csv"));
}

TEST_CASE("bounds-check task") {
    TempDir dir("bounds");
    JobConfig cfg;
    cfg.task = Task::BoundsCheck;
    cfg.family = FamilySpec(FamilyKind::Symmetric, 3, Population({gauss(-1, 1), gauss(-1, -1)}));
    cfg.region = "strip";
    cfg.out_dir = dir.path.string();
    auto sum = run(cfg);
    REQUIRE(sum.get("violations") == "0");
    REQUIRE(sum.get("checked") == "64");
    // the diamond region reports the golden-ratio escape of the sqrt(2) claim
    cfg.family = FamilySpec(FamilyKind::SkewSymmetricTridiagonal, 4,
                            Population({gauss(1, 0), gauss(0, 1)}));
    cfg.region = "diamond";
    cfg.out_dir = (dir.path / "diamond").string();
    auto sum2 = run(cfg);
    REQUIRE(sum2.get("checked") == "8");
    REQUIRE(sum2.get("violations") != "0");
}

TEST_CASE("rayleigh-density task skips singular matrices") {
    TempDir dir("ray");
    JobConfig cfg;
    cfg.task = Task::RayleighDensity;
    cfg.family = FamilySpec(FamilyKind::UpperHessenberg, 4,
                            Population({eisen(1, 0), eisen(0, 1), eisen(-1, -1)}));
    cfg.family->subdiagonal_free = true;
    cfg.sampled = true;
    cfg.seed = 3;
    cfg.count = 500;
    cfg.window = {-2, 2, -2, 2};
    cfg.grid_w = 32;
    cfg.grid_h = 32;
    cfg.out_dir = dir.path.string();
    auto sum = run(cfg);
    auto grid = load_grid((dir.path / "density.grid").string());
    BigInt used = grid.total_in + grid.total_out;
    BigInt skipped(sum.get("singular_skipped"));
    REQUIRE(used + skipped == 500);
}

TEST_CASE("edge-study task writes roots per population element") {
    TempDir dir("edge");
    JobConfig cfg;
    cfg.task = Task::EdgeStudy;
    cfg.family = FamilySpec(FamilyKind::UHToeplitzZeroDiag, 5,
                            Population({gauss(1, 0), gauss(0, 1), gauss(-1, 0), gauss(0, -1)}));
    cfg.symbol_t = {cplx(1.0), cplx(0.0, 1.0), cplx(-1.0)};
    cfg.out_dir = dir.path.string();
    auto sum = run(cfg);
    REQUIRE(sum.get("elements") == "4");
    auto csv = slurp(dir.path / "edge_roots.csv");
    // header + 4 elements x degree-5 root sets
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 5);
}

TEST_CASE("summary excludes timings but summary.txt records them") {
    TempDir dir("summary");
    JobConfig cfg;
    cfg.task = Task::Size;
    cfg.family = small_symmetric();
    cfg.out_dir = dir.path.string();
    auto sum = run(cfg);
    REQUIRE(sum.get("elapsed_seconds").empty());
    auto text = slurp(dir.path / "summary.txt");
    REQUIRE(text.find("elapsed_seconds=") != std::string::npos);
}
