#include "sparsestab/sampler.hpp"

#include <cmath>
#include <numbers>

#include "sparsestab/errors.hpp"
#include "sparsestab/rng.hpp"

namespace sparsestab {

void SamplerConfig::check() const {
    if (t < 1) throw config_error("sampler: t must be >= 1");
    if (!(delta > 0.0) || !(delta < 1.0)) throw config_error("sampler: delta must lie in (0,1)");
    if (mode == Mode::exact_full) throw config_error("sampler: mode must be iid or correlated");
    if (mode == Mode::correlated && !phi.is_pi_over_4())
        throw config_error("sampler: correlated mode requires phi = pi/4");
    if (postselect_factor <= 0.0) throw config_error("sampler: postselect_factor must be positive");
    if (max_attempts < 1) throw config_error("sampler: max_attempts must be >= 1");
}

double gamma_offset(Mode mode, int t) {
    if (t < 1) throw config_error("gamma_offset: t must be >= 1");
    if (mode == Mode::correlated) return 1.0 + (1.0 - std::numbers::sqrt2 / 2.0) * t;
    return 1.0;
}

SampleCount sample_count(Phi phi, int t, double delta, Mode mode) {
    const double xi = extent(phi, t);
    const double g = gamma_offset(mode, t);
    if (xi <= g)
        throw infeasible_error("sample_count: extent " + std::to_string(xi) +
                               " does not exceed gamma " + std::to_string(g));
    const double k_target = std::ceil((xi - g) / (delta * delta));
    SampleCount out;
    if (mode == Mode::correlated) {
        const double groups = std::ceil(k_target / (t + 1));
        out.m = static_cast<std::size_t>(groups);
        out.k = *out.m * static_cast<std::size_t>(t + 1);
    } else {
        out.k = static_cast<std::size_t>(k_target);
    }
    return out;
}

namespace {

SparseDecomposition make_container(const SamplerConfig& cfg, const SampleCount& count) {
    SparseDecomposition d;
    d.t = cfg.t;
    d.phi = cfg.phi.value();
    d.mode = cfg.mode;
    d.delta = cfg.delta;
    d.gamma = gamma_offset(cfg.mode, cfg.t);
    d.k = count.k;
    d.l1 = l1_norm(cfg.phi, cfg.t);
    d.seed = cfg.seed;
    d.group_size = cfg.mode == Mode::correlated ? cfg.t + 1 : 1;
    d.terms.reserve(count.k);
    return d;
}

}  // namespace

SparseDecomposition sparsify_iid(const SamplerConfig& cfg) {
    cfg.check();
    if (cfg.mode != Mode::iid) throw config_error("sparsify_iid: mode must be iid");
    const SampleCount count = sample_count(cfg.phi, cfg.t, cfg.delta, Mode::iid);
    SparseDecomposition d = make_container(cfg, count);

    const TildeCoeffs tc = tilde_coeffs(cfg.phi);
    const double m0 = std::abs(tc.c0), m1 = std::abs(tc.c1);
    const double p1 = m1 / (m0 + m1);
    const cplx u0 = tc.c0 / m0, u1 = tc.c1 / m1;
    const double weight = d.l1 / static_cast<double>(count.k);

    CounterRng rng(cfg.seed);
    for (std::size_t i = 0; i < count.k; ++i) {
        CounterRng stream = rng.substream(i);
        ProductStabTerm term(cfg.t, 1.0);
        cplx phase = 1.0;
        for (int j = 0; j < cfg.t; ++j) {
            if (stream.bernoulli(p1)) {
                term.set_bit(j, true);
                phase *= u1;
            } else {
                phase *= u0;
            }
        }
        term.coeff = weight * phase;
        d.terms.push_back(std::move(term));
    }
    return d;
}

SparseDecomposition sparsify_correlated(const SamplerConfig& cfg) {
    cfg.check();
    if (cfg.mode != Mode::correlated) throw config_error("sparsify_correlated: mode must be correlated");
    const SampleCount count = sample_count(cfg.phi, cfg.t, cfg.delta, Mode::correlated);
    SparseDecomposition d = make_container(cfg, count);

    // All tilde coefficients at pi/4 have unit phase +1.
    const cplx weight = d.l1 / static_cast<double>(count.k);

    CounterRng rng(cfg.seed);
    for (std::size_t g = 0; g < *count.m; ++g) {
        CounterRng stream = rng.substream(g);
        ProductStabTerm base(cfg.t, weight);
        for (int j = 0; j < cfg.t; ++j)
            if (stream.bit()) base.set_bit(j, true);
        d.terms.push_back(base);
        for (int j = 0; j < cfg.t; ++j) {
            ProductStabTerm flip = base;
            flip.flip_bit(j);
            d.terms.push_back(std::move(flip));
        }
    }
    return d;
}

SparseDecomposition sparsify(const SamplerConfig& cfg) {
    cfg.check();
    return cfg.mode == Mode::correlated ? sparsify_correlated(cfg) : sparsify_iid(cfg);
}

PostselectResult sparsify_with_postselection(
    const SamplerConfig& cfg,
    const std::function<double(const SparseDecomposition&)>& norm_fn) {
    cfg.check();
    if (!cfg.postselect) throw config_error("postselection requested with postselect = false");
    const double threshold = cfg.postselect_factor * cfg.delta * cfg.delta;
    double last_gap = 0.0;
    for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
        SamplerConfig draw = cfg;
        draw.seed = CounterRng(cfg.seed).substream(static_cast<std::uint64_t>(attempt)).next_u64();
        SparseDecomposition d = sparsify(draw);
        last_gap = norm_fn(d) - 1.0;
        if (last_gap <= threshold) return PostselectResult{std::move(d), attempt};
    }
    throw infeasible_error("postselection exhausted after " + std::to_string(cfg.max_attempts) +
                           " attempts; last norm gap " + std::to_string(last_gap));
}

std::string to_string(RegimeWarning w) {
    switch (w) {
        case RegimeWarning::extent_small: return "WARN_EXTENT_SMALL";
        case RegimeWarning::delta_large: return "WARN_DELTA_LARGE";
    }
    return "WARN_UNKNOWN";
}

std::vector<RegimeWarning> regime_check(int t, double delta, double extent_factor,
                                        double delta_factor) {
    std::vector<RegimeWarning> warnings;
    const double xi = extent(Phi(std::numbers::pi / 4.0), t);
    if (xi < extent_factor / (delta * delta)) warnings.push_back(RegimeWarning::extent_small);
    if (delta * delta > delta_factor / t) warnings.push_back(RegimeWarning::delta_large);
    return warnings;
}

}  // namespace sparsestab
