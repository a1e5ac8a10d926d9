#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsestab/terms.hpp"

namespace sparsestab {

struct BenchConfig {
    int t_min = 14;
    int t_max = 30;
    double delta = 0.1;
    int runs = 10;
    std::size_t L = 16;  // fixed FASTNORM sample count across modes and t
    std::uint64_t seed = 1;
    int warmup = 1;

    void check() const;
};

struct BenchRecord {
    int t = 0;
    Mode mode = Mode::iid;
    std::size_t k = 0;
    int run_index = 0;  // -1 marks an error row
    double runtime_seconds = 0.0;
    std::uint64_t overlap_ops = 0;
    std::string error;
};

struct BenchResult {
    std::vector<BenchRecord> records;  // per-run rows, warmups discarded

    // max runtime over runs for (t, mode); empty on per-cell failure
    std::vector<BenchRecord> worst_case() const;
    // iid minus correlated worst-case runtime per t
    std::vector<std::pair<int, double>> difference() const;
};

// Times fastnorm only (sampling and serialization excluded), sequentially,
// on a monotonic clock. Per-cell failures become error rows and the sweep
// continues.
BenchResult run_benchmark(const BenchConfig& cfg, std::ostream* progress = nullptr);

// Writes runs.csv, worst_case.csv and difference.csv into out_dir
// (atomically: temp file + rename).
void write_bench_csv(const BenchResult& result, const std::string& out_dir);

}  // namespace sparsestab
