#include "sparsestab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sparsestab/errors.hpp"

namespace sparsestab {

NormEstimate gram_norm_exact(const SparseDecomposition& d) {
    const cplx g = gram_dot(d, d);
    if (std::abs(g.imag()) > 1e-10)
        throw std::runtime_error("gram_norm_exact: imaginary residue exceeds 1e-10");
    NormEstimate out;
    out.value = g.real();
    out.method = NormMethod::exact;
    return out;
}

EquatorialState random_equatorial(int t, CounterRng& rng) {
    if (t < 1) throw std::domain_error("random_equatorial: t must be >= 1");
    EquatorialState theta;
    theta.t = t;
    theta.form = QuadraticFormZ4(t);
    for (int j = 0; j < t; ++j)
        theta.form.d[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(rng.next_u64() & 3);
    for (int j = 0; j < t; ++j)
        for (int k = j + 1; k < t; ++k) theta.form.set_coupling(j, k, rng.bit());
    return theta;
}

cplx equatorial_overlap(const EquatorialState& theta, const ProductStabTerm& term,
                        GaussSolver& solver) {
    if (theta.t != term.t)
        throw std::invalid_argument("equatorial_overlap: qubit counts differ");
    const DiscreteComplex g = solver.eval_masked(theta.form, term.bits.data());
    if (g.zero) return 0.0;
    const int s = term.plus_count();
    const double mag = std::exp2(0.5 * (g.p - theta.t - s));
    const double ang = -std::numbers::pi * g.b / 4.0;  // conjugated Gauss sum
    return term.phase() * cplx(mag * std::cos(ang), mag * std::sin(ang));
}

cplx equatorial_overlap(const EquatorialState& theta, const ProductStabTerm& term) {
    GaussSolver solver;
    return equatorial_overlap(theta, term, solver);
}

DenseState dense_equatorial(const EquatorialState& theta) {
    if (theta.t > kDenseMaxQubits)
        throw std::length_error("dense_equatorial: t exceeds dense cap");
    static constexpr cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    DenseState out;
    out.t = theta.t;
    out.amp.resize(std::size_t{1} << theta.t);
    const double scale = std::exp2(-0.5 * theta.t);
    for (std::uint64_t x = 0; x < out.amp.size(); ++x)
        out.amp[x] = scale * kPowI[theta.form.eval_q(&x)];
    return out;
}

namespace {

// |<theta|psi>|^2 with psi = sum_i coeff_i |s_i>.
double overlap_sq(const EquatorialState& theta, const SparseDecomposition& d,
                  GaussSolver& solver) {
    cplx acc = 0.0;
    for (const ProductStabTerm& term : d.terms)
        acc += std::abs(term.coeff) * equatorial_overlap(theta, term, solver);
    return std::norm(acc);
}

}  // namespace

NormEstimate fastnorm(const SparseDecomposition& d, const FastNormOptions& opt, CounterRng& rng) {
    if (!(opt.epsilon > 0.0) || !(opt.epsilon < 1.0))
        throw config_error("fastnorm: epsilon must lie in (0,1)");
    if (!(opt.pfail > 0.0) || !(opt.pfail < 1.0))
        throw config_error("fastnorm: pfail must lie in (0,1)");

    std::size_t L = opt.fixed_samples
                        ? *opt.fixed_samples
                        : static_cast<std::size_t>(
                              std::ceil(8.0 / (opt.epsilon * opt.epsilon * opt.pfail)));
    if (L == 0) throw config_error("fastnorm: sample count must be positive");

    const double scale = std::exp2(static_cast<double>(d.t));
    GaussSolver solver;
    NormEstimate out;
    out.method = NormMethod::fastnorm;
    out.epsilon = opt.epsilon;
    out.pfail = opt.pfail;

    if (opt.median_of_means) {
        const std::size_t groups = static_cast<std::size_t>(
            std::max(1.0, std::ceil(8.0 * std::log(1.0 / opt.pfail))));
        const std::size_t per_group = (L + groups - 1) / groups;
        std::vector<double> means;
        means.reserve(groups);
        std::size_t j = 0;
        for (std::size_t g = 0; g < groups; ++g) {
            double acc = 0.0;
            for (std::size_t i = 0; i < per_group; ++i, ++j) {
                CounterRng stream = rng.substream(j);
                EquatorialState theta = random_equatorial(d.t, stream);
                acc += scale * overlap_sq(theta, d, solver);
                out.overlap_ops += d.terms.size();
            }
            means.push_back(acc / static_cast<double>(per_group));
        }
        std::nth_element(means.begin(), means.begin() + static_cast<std::ptrdiff_t>(groups / 2),
                         means.end());
        out.value = means[groups / 2];
        out.samples = j;
        return out;
    }

    double acc = 0.0;
    for (std::size_t j = 0; j < L; ++j) {
        CounterRng stream = rng.substream(j);
        EquatorialState theta = random_equatorial(d.t, stream);
        acc += scale * overlap_sq(theta, d, solver);
        out.overlap_ops += d.terms.size();
    }
    out.value = acc / static_cast<double>(L);
    out.samples = L;
    return out;
}

double exhaustive_diagonal_norm(const SparseDecomposition& d, const QuadraticFormZ4& couplings) {
    if (d.t > 8) throw std::length_error("exhaustive_diagonal_norm: t exceeds enumeration cap");
    if (couplings.m != d.t)
        throw std::invalid_argument("exhaustive_diagonal_norm: coupling size mismatch");
    EquatorialState theta;
    theta.t = d.t;
    theta.form = couplings;
    GaussSolver solver;
    const std::uint64_t total = std::uint64_t{1} << (2 * d.t);
    const double scale = std::exp2(static_cast<double>(d.t));
    double acc = 0.0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (int j = 0; j < d.t; ++j, c >>= 2)
            theta.form.d[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(c & 3);
        acc += scale * overlap_sq(theta, d, solver);
    }
    return acc / static_cast<double>(total);
}

}  // namespace sparsestab
