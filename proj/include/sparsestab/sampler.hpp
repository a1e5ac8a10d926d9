#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sparsestab/magic.hpp"
#include "sparsestab/terms.hpp"

namespace sparsestab {

struct SamplerConfig {
    Phi phi;
    int t = 1;
    double delta = 0.1;
    Mode mode = Mode::iid;
    std::uint64_t seed = 0;
    bool postselect = false;
    double postselect_factor = 2.0;
    int max_attempts = 64;

    void check() const;  // throws config_error
};

// Cross-term offset: 1 for iid, 1 + (1 - 2^{-1/2}) t for correlated.
double gamma_offset(Mode mode, int t);

struct SampleCount {
    std::size_t k = 0;
    std::optional<std::size_t> m;  // group count, correlated only
};

// k = ceil((extent - gamma) delta^-2), rounded up to whole (t+1)-groups in
// correlated mode. Throws infeasible_error when extent <= gamma.
SampleCount sample_count(Phi phi, int t, double delta, Mode mode);

SparseDecomposition sparsify_iid(const SamplerConfig& cfg);
SparseDecomposition sparsify_correlated(const SamplerConfig& cfg);
SparseDecomposition sparsify(const SamplerConfig& cfg);  // dispatch on mode

struct PostselectResult {
    SparseDecomposition decomposition;
    int attempts = 0;
};

// Resamples until norm_fn(psi) - 1 <= postselect_factor * delta^2; throws
// infeasible_error (carrying the last gap) after max_attempts.
PostselectResult sparsify_with_postselection(
    const SamplerConfig& cfg,
    const std::function<double(const SparseDecomposition&)>& norm_fn);

enum class RegimeWarning { extent_small, delta_large };

std::string to_string(RegimeWarning w);

// Advisory checks of the regime conditions extent >> delta^-2 and
// delta^2 << 1/t; never blocks.
std::vector<RegimeWarning> regime_check(int t, double delta,
                                        double extent_factor = 10.0,
                                        double delta_factor = 0.1);

}  // namespace sparsestab
