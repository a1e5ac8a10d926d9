#include "sparsestab/gauss.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sparsestab {

namespace {

bool any_words(const std::uint64_t* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (w[i]) return true;
    return false;
}

int lowest_bit(const std::uint64_t* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (w[i]) return static_cast<int>(i * 64) + std::countr_zero(w[i]);
    return -1;
}

void clear_bit(std::uint64_t* w, int j) {
    w[static_cast<std::size_t>(j) >> 6] &= ~(std::uint64_t{1} << (j & 63));
}

bool test_bit(const std::uint64_t* w, int j) {
    return (w[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1u;
}

// Calls fn(j) for every set bit.
template <typename Fn>
void for_each_bit(const std::uint64_t* w, std::size_t n, Fn fn) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t word = w[i];
        while (word) {
            fn(static_cast<int>(i * 64) + std::countr_zero(word));
            word &= word - 1;
        }
    }
}

}  // namespace

QuadraticFormZ4::QuadraticFormZ4(int m) : m(m), d(static_cast<std::size_t>(m), 0) {
    if (m < 0) throw std::domain_error("QuadraticFormZ4: m must be >= 0");
    rows.assign(static_cast<std::size_t>(m) * words(), 0);
}

bool QuadraticFormZ4::coupling(int j, int k) const {
    return test_bit(rows.data() + static_cast<std::size_t>(j) * words(), k);
}

void QuadraticFormZ4::set_coupling(int j, int k, bool v) {
    if (j == k) throw std::invalid_argument("coupling: diagonal entries are not allowed");
    const std::size_t w = words();
    std::uint64_t* rj = rows.data() + static_cast<std::size_t>(j) * w;
    std::uint64_t* rk = rows.data() + static_cast<std::size_t>(k) * w;
    const std::uint64_t mj = std::uint64_t{1} << (j & 63);
    const std::uint64_t mk = std::uint64_t{1} << (k & 63);
    if (v) {
        rj[static_cast<std::size_t>(k) >> 6] |= mk;
        rk[static_cast<std::size_t>(j) >> 6] |= mj;
    } else {
        rj[static_cast<std::size_t>(k) >> 6] &= ~mk;
        rk[static_cast<std::size_t>(j) >> 6] &= ~mj;
    }
}

int QuadraticFormZ4::eval_q(const std::uint64_t* x) const {
    const std::size_t w = words();
    int q = 0;
    int cross = 0;  // counts each coupled pair twice
    for (int j = 0; j < m; ++j) {
        if (!test_bit(x, j)) continue;
        q += d[static_cast<std::size_t>(j)];
        const std::uint64_t* rj = rows.data() + static_cast<std::size_t>(j) * w;
        for (std::size_t i = 0; i < w; ++i) cross += std::popcount(rj[i] & x[i]);
    }
    return (q + cross) & 3;  // 2 * (cross/2) == cross, cross is even
}

std::complex<double> DiscreteComplex::to_complex() const {
    if (zero) return {0.0, 0.0};
    const double mag = std::exp2(0.5 * p);
    const double ang = std::numbers::pi * b / 4.0;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

DiscreteComplex GaussSolver::eval(const QuadraticFormZ4& f) {
    full_.assign(f.words(), 0);
    for (int j = 0; j < f.m; ++j)
        full_[static_cast<std::size_t>(j) >> 6] |= std::uint64_t{1} << (j & 63);
    return eval_masked(f, full_.data());
}

DiscreteComplex GaussSolver::eval_masked(const QuadraticFormZ4& f, const std::uint64_t* active) {
    const std::size_t w = f.words();
    d_ = f.d;
    rows_ = f.rows;
    active_.assign(active, active + w);
    support_.resize(w);
    lambda_.resize(w);

    int p = 0;
    int b = 0;  // omega_8 exponent mod 8

    // Flips couplings between every unordered pair inside `mask`.
    auto flip_pairs = [&](const std::uint64_t* mask) {
        for_each_bit(mask, w, [&](int s) {
            std::uint64_t* rs = rows_.data() + static_cast<std::size_t>(s) * w;
            for (std::size_t i = 0; i < w; ++i) rs[i] ^= mask[i];
            clear_bit(rs, s);
        });
    };

    while (any_words(active_.data(), w)) {
        const int v = lowest_bit(active_.data(), w);
        clear_bit(active_.data(), v);
        const std::uint64_t* rv = rows_.data() + static_cast<std::size_t>(v) * w;
        for (std::size_t i = 0; i < w; ++i) support_[i] = rv[i] & active_[i];
        const int dv = d_[static_cast<std::size_t>(v)] & 3;

        if (dv & 1) {
            // sum over x_v gives sqrt(2) * omega_8^{+-1} * i^{c * parity(S)}.
            p += 1;
            b = (b + (dv == 1 ? 1 : 7)) & 7;
            const int c = (dv == 1) ? 3 : 1;
            for_each_bit(support_.data(), w, [&](int s) {
                d_[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(
                    (d_[static_cast<std::size_t>(s)] + c) & 3);
            });
            flip_pairs(support_.data());
            continue;
        }

        if (!any_words(support_.data(), w)) {
            if (dv == 0) {
                p += 2;
                continue;
            }
            return DiscreteComplex{true, 0, 0};  // factor 1 + i^2 = 0
        }

        // Even d_v with couplings: factor 2 and the affine constraint
        // parity(S) = b_req. Substitute the lowest variable of S.
        p += 2;
        const int b_req = (dv == 2) ? 1 : 0;
        const int s0 = lowest_bit(support_.data(), w);
        clear_bit(support_.data(), s0);           // support_ is now S'
        clear_bit(active_.data(), s0);
        const std::uint64_t* rs0 = rows_.data() + static_cast<std::size_t>(s0) * w;
        for (std::size_t i = 0; i < w; ++i) lambda_[i] = rs0[i] & active_[i];
        const int ds0 = d_[static_cast<std::size_t>(s0)] & 3;

        if (b_req) b = (b + 2 * ds0) & 7;  // constant i^{d_{s0} b}

        // d_{s0} x_{s0} with x_{s0} = b xor parity(S'), lifted mod 4.
        const int dprime = (ds0 * (1 + 2 * b_req)) & 3;
        if (dprime) {
            for_each_bit(support_.data(), w, [&](int s) {
                d_[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(
                    (d_[static_cast<std::size_t>(s)] + dprime) & 3);
            });
        }
        if (ds0 & 1) flip_pairs(support_.data());

        // 2 x_{s0} lambda(x) with x_{s0} = b + sum_{S'} x_s (mod 2).
        if (b_req) {
            for_each_bit(lambda_.data(), w, [&](int u) {
                d_[static_cast<std::size_t>(u)] = static_cast<std::uint8_t>(
                    (d_[static_cast<std::size_t>(u)] + 2) & 3);
            });
        }
        for_each_bit(support_.data(), w, [&](int s) {
            if (test_bit(lambda_.data(), s))
                d_[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(
                    (d_[static_cast<std::size_t>(s)] + 2) & 3);
            std::uint64_t* rs = rows_.data() + static_cast<std::size_t>(s) * w;
            for (std::size_t i = 0; i < w; ++i) rs[i] ^= lambda_[i];
            clear_bit(rs, s);
        });
        for_each_bit(lambda_.data(), w, [&](int u) {
            std::uint64_t* ru = rows_.data() + static_cast<std::size_t>(u) * w;
            for (std::size_t i = 0; i < w; ++i) ru[i] ^= support_[i];
            clear_bit(ru, u);
        });
    }

    return DiscreteComplex{false, p, b};
}

DiscreteComplex gauss_eval(const QuadraticFormZ4& f) {
    GaussSolver solver;
    return solver.eval(f);
}

std::complex<double> gauss_brute(const QuadraticFormZ4& f) {
    if (f.m > 20) throw std::length_error("gauss_brute: m exceeds enumeration cap");
    static constexpr std::complex<double> kPowI[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    std::complex<double> acc = 0.0;
    std::uint64_t x = 0;
    const std::uint64_t n = std::uint64_t{1} << f.m;
    for (x = 0; x < n; ++x) acc += kPowI[f.eval_q(&x)];
    return acc;
}

}  // namespace sparsestab
