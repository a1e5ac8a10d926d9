#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "sparsestab/bench.hpp"
#include "sparsestab/errors.hpp"
#include "sparsestab/io.hpp"
#include "sparsestab/magic.hpp"
#include "sparsestab/norms.hpp"
#include "sparsestab/sampler.hpp"
#include "sparsestab/validate.hpp"

namespace {

using namespace sparsestab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitValidationFail = 4;

Mode parse_mode(const std::string& s) {
    const Mode m = mode_from_string(s);
    if (m == Mode::exact_full) throw config_error("mode must be iid or correlated");
    return m;
}

int cmd_extent(double phi_val, int t) {
    const Phi phi(phi_val);
    std::cout << "extent " << extent(phi, t) << "\n";
    std::cout << "l1 " << l1_norm(phi, t) << "\n";
    return kExitOk;
}

int cmd_sparsify(double phi_val, int t, double delta, const std::string& mode_str,
                 std::uint64_t seed, bool postselect, double factor, const std::string& out) {
    SamplerConfig cfg{Phi(phi_val), t, delta, parse_mode(mode_str), seed, postselect, factor};
    for (RegimeWarning w : regime_check(t, delta))
        std::cerr << to_string(w) << "\n";
    SparseDecomposition d = [&] {
        if (!postselect) return sparsify(cfg);
        auto res = sparsify_with_postselection(
            cfg, [](const SparseDecomposition& x) { return gram_norm_exact(x).value; });
        std::cerr << "postselection accepted after " << res.attempts << " attempt(s)\n";
        return std::move(res.decomposition);
    }();
    atomic_write_file(out, serialize(d));
    std::cout << "k " << d.k << "\n";
    return kExitOk;
}

int cmd_norm(const std::string& in, const std::string& method, double epsilon, double pfail,
             std::uint64_t seed) {
    const SparseDecomposition d = deserialize(read_file(in));
    if (method == "exact") {
        std::cout << "norm " << gram_norm_exact(d).value << "\n";
        return kExitOk;
    }
    if (method != "fastnorm") throw config_error("method must be exact or fastnorm");
    FastNormOptions opt;
    opt.epsilon = epsilon;
    opt.pfail = pfail;
    CounterRng rng(seed);
    const NormEstimate est = fastnorm(d, opt, rng);
    std::cout << "norm " << est.value << "\n";
    std::cout << "samples " << est.samples << "\n";
    return kExitOk;
}

int cmd_validate(double phi_val, int t, double delta, const std::string& mode_str, int runs,
                 std::uint64_t seed, const std::string& out) {
    const RunReport rep =
        mc_expected_error(Phi(phi_val), t, delta, parse_mode(mode_str), runs, seed);
    std::cout << rep.to_table();
    if (!out.empty()) atomic_write_file(out, rep.to_json());
    return rep.assertion_pass ? kExitOk : kExitValidationFail;
}

int cmd_tailcheck(int t, double delta, const std::string& mode_str, int runs,
                  std::uint64_t seed) {
    const RunReport rep = mc_tail_check(t, delta, parse_mode(mode_str), runs, seed);
    std::cout << rep.to_table();
    return rep.assertion_pass ? kExitOk : kExitValidationFail;
}

int cmd_bench(int t_min, int t_max, double delta, int runs, std::size_t L, std::uint64_t seed,
              const std::string& out_dir) {
    BenchConfig cfg;
    cfg.t_min = t_min;
    cfg.t_max = t_max;
    cfg.delta = delta;
    cfg.runs = runs;
    cfg.L = L;
    cfg.seed = seed;
    const BenchResult result = run_benchmark(cfg, &std::cerr);
    write_bench_csv(result, out_dir);
    std::cout << "wrote " << out_dir << "/{runs,worst_case,difference}.csv\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparsified stabilizer decompositions of tensored magic states"};
    app.require_subcommand(1);

    const double pi4 = std::numbers::pi / 4.0;
    double phi = pi4, delta = 0.1, factor = 2.0, epsilon = 0.05, pfail = 0.1;
    int t = 1, t_min = 14, t_max = 30, runs = 100;
    std::uint64_t seed = 0;
    std::size_t L = 16;
    std::string mode = "iid", in, out, out_dir, method = "exact";
    bool postselect = false;

    auto* c_extent = app.add_subcommand("extent", "Stabilizer extent and L1 norm");
    c_extent->add_option("--phi", phi, "angle in radians")->required();
    c_extent->add_option("--t", t)->required();

    auto* c_sparsify = app.add_subcommand("sparsify", "Sample a k-term decomposition");
    c_sparsify->add_option("--phi", phi)->required();
    c_sparsify->add_option("--t", t)->required();
    c_sparsify->add_option("--delta", delta)->required();
    c_sparsify->add_option("--mode", mode)->required();
    c_sparsify->add_option("--seed", seed)->required();
    c_sparsify->add_flag("--postselect", postselect);
    c_sparsify->add_option("--factor", factor);
    c_sparsify->add_option("--out", out)->required();

    auto* c_norm = app.add_subcommand("norm", "Exact or randomized <psi|psi>");
    c_norm->add_option("--in", in)->required();
    c_norm->add_option("--method", method)->required();
    c_norm->add_option("--epsilon", epsilon);
    c_norm->add_option("--pfail", pfail);
    c_norm->add_option("--seed", seed);

    auto* c_validate = app.add_subcommand("validate", "Monte Carlo error statistics");
    c_validate->add_option("--phi", phi);
    c_validate->add_option("--t", t)->required();
    c_validate->add_option("--delta", delta)->required();
    c_validate->add_option("--mode", mode)->required();
    c_validate->add_option("--runs", runs)->required();
    c_validate->add_option("--seed", seed)->required();
    c_validate->add_option("--out", out);

    auto* c_tail = app.add_subcommand("tailcheck", "Empirical tail-bound check");
    c_tail->add_option("--t", t)->required();
    c_tail->add_option("--delta", delta)->required();
    c_tail->add_option("--mode", mode)->required();
    c_tail->add_option("--runs", runs)->required();
    c_tail->add_option("--seed", seed)->required();

    auto* c_bench = app.add_subcommand("bench", "Runtime sweep, CSV output");
    c_bench->add_option("--t-min", t_min)->required();
    c_bench->add_option("--t-max", t_max)->required();
    c_bench->add_option("--delta", delta);
    c_bench->add_option("--runs", runs);
    c_bench->add_option("--L", L);
    c_bench->add_option("--seed", seed)->required();
    c_bench->add_option("--out-dir", out_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_extent->parsed()) return cmd_extent(phi, t);
        if (c_sparsify->parsed())
            return cmd_sparsify(phi, t, delta, mode, seed, postselect, factor, out);
        if (c_norm->parsed()) return cmd_norm(in, method, epsilon, pfail, seed);
        if (c_validate->parsed()) return cmd_validate(phi, t, delta, mode, runs, seed, out);
        if (c_tail->parsed()) return cmd_tailcheck(t, delta, mode, runs, seed);
        if (c_bench->parsed()) return cmd_bench(t_min, t_max, delta, runs, L, seed, out_dir);
    } catch (const sparsestab::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const sparsestab::infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const sparsestab::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        // Phi outside (0, pi/2) and similar parameter-domain failures.
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
