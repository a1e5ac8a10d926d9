#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sparsestab/bench.hpp"
#include "sparsestab/errors.hpp"
#include "sparsestab/magic.hpp"
#include "sparsestab/sampler.hpp"

using namespace sparsestab;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("bench config validation") {
    BenchConfig bad;
    bad.t_min = 10;
    bad.t_max = 9;
    CHECK_THROWS_AS(bad.check(), config_error);
    bad.t_max = 10;
    bad.runs = 0;
    CHECK_THROWS_AS(bad.check(), config_error);
    bad.runs = 1;
    bad.L = 0;
    CHECK_THROWS_AS(bad.check(), config_error);
}

TEST_CASE("record layout of a small sweep") {
    BenchConfig cfg;
    cfg.t_min = 14;
    cfg.t_max = 15;
    cfg.delta = 0.1;
    cfg.runs = 2;
    cfg.L = 4;
    cfg.seed = 5;
    const BenchResult result = run_benchmark(cfg);

    // 2 values of t, 2 modes, 2 runs each.
    REQUIRE(result.records.size() == 8);
    const Phi pi4(std::numbers::pi / 4.0);
    for (const BenchRecord& r : result.records) {
        CHECK(r.run_index >= 0);
        CHECK(r.run_index < 2);
        CHECK(r.runtime_seconds >= 0.0);
        const Mode mode = r.mode;
        CHECK(r.k == sample_count(pi4, r.t, 0.1, mode).k);
        CHECK(r.overlap_ops == 4 * r.k);
        CHECK(r.error.empty());
    }

    const auto worst = result.worst_case();
    CHECK(worst.size() == 4);
    for (const BenchRecord& w : worst) {
        double max_seen = 0.0;
        for (const BenchRecord& r : result.records)
            if (r.t == w.t && r.mode == w.mode) max_seen = std::max(max_seen, r.runtime_seconds);
        CHECK(w.runtime_seconds == max_seen);
    }
    CHECK(result.difference().size() == 2);
}

TEST_CASE("infeasible cells become error rows and the sweep continues") {
    BenchConfig cfg;
    cfg.t_min = 2;
    cfg.t_max = 2;
    cfg.delta = 0.5;  // correlated gamma exceeds xi^2 here
    cfg.runs = 2;
    cfg.L = 4;
    const BenchResult result = run_benchmark(cfg);

    int iid_rows = 0, error_rows = 0;
    for (const BenchRecord& r : result.records) {
        if (r.run_index < 0) {
            ++error_rows;
            CHECK(r.mode == Mode::correlated);
            CHECK_FALSE(r.error.empty());
        } else {
            ++iid_rows;
            CHECK(r.mode == Mode::iid);
        }
    }
    CHECK(iid_rows == 2);
    CHECK(error_rows == 1);
    CHECK(result.difference().empty());  // no complete pair at this t
}

TEST_CASE("csv output") {
    BenchConfig cfg;
    cfg.t_min = 14;
    cfg.t_max = 14;
    cfg.runs = 2;
    cfg.L = 4;
    const BenchResult result = run_benchmark(cfg);

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "sparsestab_bench_test";
    std::filesystem::remove_all(dir);
    write_bench_csv(result, dir.string());

    const std::string runs = slurp(dir / "runs.csv");
    CHECK(runs.rfind("t,mode,k,run_index,runtime_seconds\n", 0) == 0);
    CHECK(runs.find("14,iid,818,0,") != std::string::npos);
    CHECK(runs.find("14,correlated,420,1,") != std::string::npos);

    const std::string worst = slurp(dir / "worst_case.csv");
    CHECK(worst.rfind("t,mode,k,runtime_max_seconds\n", 0) == 0);
    CHECK(worst.find("14,iid,818,") != std::string::npos);

    const std::string diff = slurp(dir / "difference.csv");
    CHECK(diff.rfind("t,runtime_diff_seconds\n", 0) == 0);
    CHECK(diff.find("14,") != std::string::npos);

    std::filesystem::remove_all(dir);
}
