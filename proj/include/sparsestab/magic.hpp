#pragma once

#include <array>
#include <complex>
#include <vector>

namespace sparsestab {

using cplx = std::complex<double>;

struct ProductStabTerm;  // terms.hpp

// Diagonal-state angle, strictly inside (0, pi/2) so both tilde coefficients
// are nonzero. pi/4 selects the H/T magic state.
class Phi {
public:
    explicit Phi(double value);
    double value() const { return value_; }
    bool is_pi_over_4() const;

private:
    double value_;
};

// Per-qubit coefficients of the extent-optimal decomposition:
// c0 multiplies normalized |0>, c1 multiplies normalized |+>.
struct TildeCoeffs {
    cplx c0;
    cplx c1;
};

struct DenseState {
    int t = 0;
    std::vector<cplx> amp;  // length 2^t, qubit j = bit j of the index

    double norm() const;
};

// Dense vectors are capped at 2^20 amplitudes (~16 MB).
inline constexpr int kDenseMaxQubits = 20;

TildeCoeffs tilde_coeffs(Phi phi);

// (sqrt(1-sin phi) + sqrt(1-cos phi))^(2t); squared L1 norm of the optimal
// decomposition, multiplicative in t.
double extent(Phi phi, int t);

// ||c||_1 = sqrt(extent).
double l1_norm(Phi phi, int t);

// Single-qubit target in the computational basis: c0|0> + c1|+>.
std::array<cplx, 2> target_qubit(Phi phi);

// t-fold tensor power of target_qubit, t <= kDenseMaxQubits.
DenseState target_dense(Phi phi, int t);

struct HRelationResult {
    bool ok;
    double max_dev;
};

// Checks e^{-i pi/8} S H |T> against the phi=pi/4 target state entrywise.
// phase_shift perturbs the leading phase (negative-control hook); the
// identity holds at the default.
HRelationResult h_magic_relation_check(double phase_shift = 0.0);

// <omega|target>: per-qubit product of <0| or <+| overlaps with the
// single-qubit target, times the conjugated unit phase of the term. O(t).
cplx target_overlap(const ProductStabTerm& term, Phi phi);

}  // namespace sparsestab
