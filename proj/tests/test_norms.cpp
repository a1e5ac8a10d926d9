#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sparsestab/errors.hpp"
#include "sparsestab/norms.hpp"
#include "sparsestab/rng.hpp"
#include "sparsestab/sampler.hpp"

using namespace sparsestab;

namespace {
constexpr double kPi = std::numbers::pi;
const Phi kPi4(kPi / 4.0);

SparseDecomposition random_decomposition(int t, std::size_t k, CounterRng& rng) {
    SparseDecomposition d;
    d.t = t;
    d.phi = kPi / 4.0;
    d.k = k;
    d.l1 = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        ProductStabTerm term(t, 1.0);
        for (int j = 0; j < t; ++j)
            if (rng.bit()) term.set_bit(j, true);
        const double ang = 2.0 * kPi * rng.uniform();
        term.coeff = (0.1 + rng.uniform()) * cplx(std::cos(ang), std::sin(ang));
        d.terms.push_back(std::move(term));
    }
    return d;
}

cplx dense_dot(const DenseState& a, const DenseState& b) {
    cplx s = 0.0;
    for (std::size_t x = 0; x < a.amp.size(); ++x) s += std::conj(a.amp[x]) * b.amp[x];
    return s;
}
}  // namespace

TEST_CASE("gram_norm_exact basics") {
    CHECK(std::abs(gram_norm_exact(exact_full(kPi4, 8)).value - 1.0) <= 1e-9);

    CounterRng rng(3);
    const SparseDecomposition one = random_decomposition(5, 1, rng);
    CHECK(gram_norm_exact(one).value ==
          doctest::Approx(std::norm(one.terms[0].coeff)).epsilon(1e-13));
}

TEST_CASE("random_equatorial determinism and uniformity") {
    CounterRng a(12), b(12);
    const EquatorialState s1 = random_equatorial(9, a);
    const EquatorialState s2 = random_equatorial(9, b);
    CHECK(s1.form.d == s2.form.d);
    CHECK(s1.form.rows == s2.form.rows);

    CounterRng rng(55);
    std::array<long, 4> counts{};
    const int draws = 4000;
    for (int i = 0; i < draws / 4; ++i) {
        const EquatorialState s = random_equatorial(4, rng);
        for (int j = 0; j < 4; ++j) ++counts[s.form.d[static_cast<std::size_t>(j)]];
    }
    for (long c : counts) {
        const double f = static_cast<double>(c) / draws;
        CHECK(f > 0.22);
        CHECK(f < 0.28);
    }
}

TEST_CASE("equatorial state is normalized") {
    CounterRng rng(8);
    const EquatorialState s = random_equatorial(6, rng);
    CHECK(std::abs(dense_equatorial(s).norm() - 1.0) < 1e-12);
}

TEST_CASE("equatorial_overlap against the dense oracle") {
    CounterRng rng(0xE0);
    for (int trial = 0; trial < 100; ++trial) {
        const int t = 1 + static_cast<int>(rng.below(10));
        const EquatorialState theta = random_equatorial(t, rng);
        ProductStabTerm term(t, 1.0);
        for (int j = 0; j < t; ++j)
            if (rng.bit()) term.set_bit(j, true);
        const double ang = 2.0 * kPi * rng.uniform();
        term.coeff = cplx(std::cos(ang), std::sin(ang));

        SparseDecomposition d;
        d.t = t;
        d.k = 1;
        d.terms.push_back(term);
        const cplx dense = dense_dot(dense_equatorial(theta), dense_expand(d));
        const cplx fast = equatorial_overlap(theta, term);
        CHECK(std::abs(fast - dense) <= 1e-10);
        CHECK(std::abs(fast) <= 1.0 + 1e-12);
    }
}

TEST_CASE("equatorial_overlap closed cases") {
    CounterRng rng(4);
    const int t = 5;
    const EquatorialState theta = random_equatorial(t, rng);
    ProductStabTerm zeros(t, 1.0);
    // Only the x = 0 amplitude contributes, and q(0) = 0.
    CHECK(std::abs(equatorial_overlap(theta, zeros) - cplx(std::exp2(-t / 2.0), 0.0)) < 1e-12);

    EquatorialState flat;
    flat.t = 3;
    flat.form = QuadraticFormZ4(3);  // d = 0, J = 0: the uniform |+++> state
    ProductStabTerm plus(3, 1.0);
    for (int j = 0; j < 3; ++j) plus.set_bit(j, true);
    SparseDecomposition d;
    d.t = 3;
    d.k = 1;
    d.terms.push_back(plus);
    const cplx dense = dense_dot(dense_equatorial(flat), dense_expand(d));
    CHECK(std::abs(equatorial_overlap(flat, plus) - dense) < 1e-12);
    CHECK(std::abs(dense - cplx(1.0, 0.0)) < 1e-12);

    ProductStabTerm wrong(4, 1.0);
    CHECK_THROWS_AS(equatorial_overlap(flat, wrong), std::invalid_argument);
}

TEST_CASE("exhaustive diagonal average equals the exact norm") {
    CounterRng rng(0xD1A6);
    for (int t : {2, 4, 6}) {
        for (int trial = 0; trial < 3; ++trial) {
            const SparseDecomposition d = random_decomposition(t, 1 + rng.below(15), rng);
            QuadraticFormZ4 couplings(t);
            for (int j = 0; j < t; ++j)
                for (int k2 = j + 1; k2 < t; ++k2) couplings.set_coupling(j, k2, rng.bit());
            const double exact = gram_norm_exact(d).value;
            const double avg = exhaustive_diagonal_norm(d, couplings);
            CHECK(std::abs(avg - exact) <= 1e-9 * std::max(1.0, exact));
        }
    }
}

TEST_CASE("fastnorm on a single unit term") {
    SparseDecomposition d;
    d.t = 4;
    d.k = 1;
    d.terms.push_back(ProductStabTerm(4, 1.0));
    FastNormOptions opt;
    opt.fixed_samples = 16;
    double sum = 0.0;
    const int trials = 400;
    for (int i = 0; i < trials; ++i) {
        CounterRng rng(900, static_cast<std::uint64_t>(i));
        sum += fastnorm(d, opt, rng).value;
    }
    CHECK(std::abs(sum / trials - 1.0) <= 0.05);
}

TEST_CASE("fastnorm determinism and op count") {
    SamplerConfig cfg{kPi4, 6, 0.4, Mode::iid, 31};
    const SparseDecomposition d = sparsify(cfg);
    FastNormOptions opt;
    opt.fixed_samples = 32;
    CounterRng r1(5), r2(5);
    const NormEstimate a = fastnorm(d, opt, r1);
    const NormEstimate b = fastnorm(d, opt, r2);
    CHECK(a.value == b.value);
    CHECK(a.samples == 32);
    CHECK(a.overlap_ops == 32 * d.k);
}

TEST_CASE("fastnorm default sample count") {
    SparseDecomposition d;
    d.t = 2;
    d.k = 1;
    d.terms.push_back(ProductStabTerm(2, 1.0));
    FastNormOptions opt;
    opt.epsilon = 0.5;
    opt.pfail = 0.5;
    CounterRng rng(1);
    CHECK(fastnorm(d, opt, rng).samples == 64);  // ceil(8 / (0.25 * 0.5))
    opt.epsilon = 1.5;
    CHECK_THROWS_AS(fastnorm(d, opt, rng), config_error);
}

TEST_CASE("fastnorm median-of-means mode runs") {
    SamplerConfig cfg{kPi4, 5, 0.4, Mode::iid, 7};
    const SparseDecomposition d = sparsify(cfg);
    const double exact = gram_norm_exact(d).value;
    FastNormOptions opt;
    opt.fixed_samples = 2048;
    opt.median_of_means = true;
    CounterRng rng(2);
    const NormEstimate est = fastnorm(d, opt, rng);
    CHECK(std::abs(est.value - exact) / exact < 0.3);
}

TEST_CASE("standard error scales as L^{-1/2}") {
    SamplerConfig cfg{kPi4, 4, 0.45, Mode::iid, 13};
    const SparseDecomposition d = sparsify(cfg);
    std::vector<double> log_l, log_se;
    for (std::size_t L : {64u, 256u, 1024u, 4096u}) {
        FastNormOptions opt;
        opt.fixed_samples = L;
        const int reps = 160;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < reps; ++i) {
            CounterRng rng(777, L * 100003 + static_cast<std::uint64_t>(i));
            const double v = fastnorm(d, opt, rng).value;
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / reps;
        const double sd = std::sqrt((sum_sq - reps * mean * mean) / (reps - 1));
        log_l.push_back(std::log(static_cast<double>(L)));
        log_se.push_back(std::log(sd));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < log_l.size(); ++i) {
        mx += log_l[i];
        my += log_se[i];
    }
    mx /= 4.0;
    my /= 4.0;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        num += (log_l[i] - mx) * (log_se[i] - my);
        den += (log_l[i] - mx) * (log_l[i] - mx);
    }
    const double slope = num / den;
    MESSAGE("stderr vs L slope: " << slope);
    CHECK(slope <= -0.4);
    CHECK(slope >= -0.6);
}
