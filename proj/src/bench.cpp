#include "sparsestab/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sparsestab/errors.hpp"
#include "sparsestab/io.hpp"
#include "sparsestab/norms.hpp"
#include "sparsestab/sampler.hpp"

namespace sparsestab {

void BenchConfig::check() const {
    if (t_min < 1 || t_min > t_max) throw config_error("bench: need 1 <= t_min <= t_max");
    if (runs < 1) throw config_error("bench: runs must be >= 1");
    if (L < 1) throw config_error("bench: L must be >= 1");
    if (warmup < 0) throw config_error("bench: warmup must be >= 0");
}

BenchResult run_benchmark(const BenchConfig& cfg, std::ostream* progress) {
    cfg.check();
    const Phi phi(std::numbers::pi / 4.0);
    BenchResult result;

    for (int t = cfg.t_min; t <= cfg.t_max; ++t) {
        for (Mode mode : {Mode::iid, Mode::correlated}) {
            try {
                SamplerConfig scfg{phi, t, cfg.delta, mode,
                                   CounterRng(cfg.seed)
                                       .substream(static_cast<std::uint64_t>(t) * 2 +
                                                  (mode == Mode::correlated ? 1 : 0))
                                       .next_u64()};
                FastNormOptions opt;
                opt.fixed_samples = cfg.L;
                for (int run = -cfg.warmup; run < cfg.runs; ++run) {
                    const SparseDecomposition d = sparsify(scfg);  // untimed
                    CounterRng norm_rng(scfg.seed, static_cast<std::uint64_t>(run + cfg.warmup));

                    const auto start = std::chrono::steady_clock::now();
                    const NormEstimate est = fastnorm(d, opt, norm_rng);
                    const auto stop = std::chrono::steady_clock::now();

                    if (run < 0) continue;  // warmup discarded
                    BenchRecord rec;
                    rec.t = t;
                    rec.mode = mode;
                    rec.k = d.k;
                    rec.run_index = run;
                    rec.runtime_seconds = std::chrono::duration<double>(stop - start).count();
                    rec.overlap_ops = est.overlap_ops;
                    result.records.push_back(rec);
                }
                if (progress)
                    *progress << "t=" << t << " mode=" << to_string(mode) << " done\n";
            } catch (const std::exception& e) {
                BenchRecord rec;
                rec.t = t;
                rec.mode = mode;
                rec.run_index = -1;
                rec.error = e.what();
                result.records.push_back(rec);
                if (progress)
                    *progress << "t=" << t << " mode=" << to_string(mode)
                              << " failed: " << e.what() << "\n";
            }
        }
    }
    return result;
}

std::vector<BenchRecord> BenchResult::worst_case() const {
    std::map<std::pair<int, int>, BenchRecord> best;
    for (const BenchRecord& r : records) {
        if (r.run_index < 0) continue;
        const std::pair<int, int> key{r.t, static_cast<int>(r.mode)};
        auto it = best.find(key);
        if (it == best.end() || r.runtime_seconds > it->second.runtime_seconds) best[key] = r;
    }
    std::vector<BenchRecord> out;
    out.reserve(best.size());
    for (const auto& [key, rec] : best) {
        (void)key;
        out.push_back(rec);
    }
    return out;
}

std::vector<std::pair<int, double>> BenchResult::difference() const {
    std::map<int, std::pair<double, double>> by_t;  // t -> (iid max, corr max)
    for (const BenchRecord& r : worst_case()) {
        auto& e = by_t[r.t];
        if (r.mode == Mode::iid)
            e.first = r.runtime_seconds;
        else
            e.second = r.runtime_seconds;
    }
    std::vector<std::pair<int, double>> out;
    for (const auto& [t, pair] : by_t)
        if (pair.first > 0.0 && pair.second > 0.0) out.emplace_back(t, pair.first - pair.second);
    return out;
}

namespace {

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

}  // namespace

void write_bench_csv(const BenchResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);

    std::ostringstream runs;
    runs << "t,mode,k,run_index,runtime_seconds\n";
    for (const BenchRecord& r : result.records) {
        if (r.run_index < 0) {
            runs << r.t << "," << to_string(r.mode) << ",,," << "\n";
            continue;
        }
        runs << r.t << "," << to_string(r.mode) << "," << r.k << "," << r.run_index << ","
             << fmt9(r.runtime_seconds) << "\n";
    }
    atomic_write_file(out_dir + "/runs.csv", runs.str());

    std::ostringstream worst;
    worst << "t,mode,k,runtime_max_seconds\n";
    for (const BenchRecord& r : result.worst_case())
        worst << r.t << "," << to_string(r.mode) << "," << r.k << ","
              << fmt9(r.runtime_seconds) << "\n";
    atomic_write_file(out_dir + "/worst_case.csv", worst.str());

    std::ostringstream diff;
    diff << "t,runtime_diff_seconds\n";
    for (const auto& [t, d] : result.difference()) diff << t << "," << fmt9(d) << "\n";
    atomic_write_file(out_dir + "/difference.csv", diff.str());
}

}  // namespace sparsestab
