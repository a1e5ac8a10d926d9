#include "sparsestab/magic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sparsestab/terms.hpp"

namespace sparsestab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
}  // namespace

Phi::Phi(double value) : value_(value) {
    if (!(value > 0.0) || !(value < kPi / 2.0)) {
        throw std::domain_error("phi must lie strictly inside (0, pi/2)");
    }
}

bool Phi::is_pi_over_4() const {
    return std::abs(value_ - kPi / 4.0) <= 1e-12;
}

double DenseState::norm() const {
    double s = 0.0;
    for (const cplx& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

TildeCoeffs tilde_coeffs(Phi phi) {
    const double p = phi.value();
    const cplx i(0.0, 1.0);
    const double nu = std::cos(kPi / 8.0);
    // |0~> = i/sqrt(2) (-i + e^{-i pi/4})(-i + e^{i phi}) |0>
    // |1~> = i/sqrt(2) (1 + e^{-i pi/4})(1 - e^{i phi}) |+>
    const cplx a0 = i * kInvSqrt2 * (-i + std::exp(-i * (kPi / 4.0))) *
                    (-i + std::exp(i * p));
    const cplx a1 = i * kInvSqrt2 * (1.0 + std::exp(-i * (kPi / 4.0))) *
                    (1.0 - std::exp(i * p));
    return TildeCoeffs{a0 / (2.0 * nu), a1 / (2.0 * nu)};
}

double extent(Phi phi, int t) {
    if (t < 1) throw std::domain_error("extent: t must be >= 1");
    const double p = phi.value();
    const double xi1 = std::pow(std::sqrt(1.0 - std::sin(p)) + std::sqrt(1.0 - std::cos(p)), 2);
    return std::pow(xi1, t);
}

double l1_norm(Phi phi, int t) {
    if (t < 1) throw std::domain_error("l1_norm: t must be >= 1");
    const double p = phi.value();
    return std::pow(std::sqrt(1.0 - std::sin(p)) + std::sqrt(1.0 - std::cos(p)), t);
}

std::array<cplx, 2> target_qubit(Phi phi) {
    const TildeCoeffs c = tilde_coeffs(phi);
    return {c.c0 + c.c1 * kInvSqrt2, c.c1 * kInvSqrt2};
}

DenseState target_dense(Phi phi, int t) {
    if (t < 1) throw std::domain_error("target_dense: t must be >= 1");
    if (t > kDenseMaxQubits) throw std::length_error("target_dense: t exceeds dense cap");
    const std::array<cplx, 2> v = target_qubit(phi);
    DenseState out;
    out.t = t;
    out.amp.assign(std::size_t{1} << t, cplx{});
    for (std::size_t x = 0; x < out.amp.size(); ++x) {
        cplx a = 1.0;
        for (int j = 0; j < t; ++j) a *= v[(x >> j) & 1u];
        out.amp[x] = a;
    }
    return out;
}

HRelationResult h_magic_relation_check(double phase_shift) {
    const cplx i(0.0, 1.0);
    // |T> = (|0> + e^{i pi/4}|1>)/sqrt(2), S = diag(1, i), H Hadamard.
    const cplx t0 = kInvSqrt2;
    const cplx t1 = std::exp(i * (kPi / 4.0)) * kInvSqrt2;
    const cplx h0 = kInvSqrt2 * (t0 + t1);
    const cplx h1 = i * kInvSqrt2 * (t0 - t1);
    const cplx lead = std::exp(-i * (kPi / 8.0 + phase_shift));
    const std::array<cplx, 2> lhs = {lead * h0, lead * h1};
    const std::array<cplx, 2> rhs = target_qubit(Phi(kPi / 4.0));
    const double dev = std::max(std::abs(lhs[0] - rhs[0]), std::abs(lhs[1] - rhs[1]));
    return HRelationResult{dev <= 1e-12, dev};
}

cplx target_overlap(const ProductStabTerm& term, Phi phi) {
    const std::array<cplx, 2> v = target_qubit(phi);
    const cplx ov0 = v[0];                         // <0|target>
    const cplx ovp = (v[0] + v[1]) * kInvSqrt2;    // <+|target>
    const int s = term.plus_count();
    const cplx prod = std::pow(ov0, term.t - s) * std::pow(ovp, s);
    return std::conj(term.phase()) * prod;
}

}  // namespace sparsestab
