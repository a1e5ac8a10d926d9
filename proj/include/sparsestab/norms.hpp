#pragma once

#include <cstdint>
#include <optional>

#include "sparsestab/gauss.hpp"
#include "sparsestab/rng.hpp"
#include "sparsestab/terms.hpp"

namespace sparsestab {

// Random quadratic-phase state with amplitudes 2^{-t/2} i^{q(x)}.
struct EquatorialState {
    int t = 0;
    QuadraticFormZ4 form;  // form.m == t
};

enum class NormMethod { exact, fastnorm };

struct NormEstimate {
    double value = 0.0;
    std::size_t samples = 0;      // L for fastnorm, 0 for exact
    NormMethod method = NormMethod::exact;
    double epsilon = 0.0;
    double pfail = 0.0;
    std::uint64_t overlap_ops = 0;  // equatorial overlaps evaluated
};

// <psi|psi> by the exact O(k^2 t/w) Gram sum; imaginary residue checked
// against 1e-10 and discarded.
NormEstimate gram_norm_exact(const SparseDecomposition& d);

// d entries uniform on Z_4, couplings uniform on {0,1}.
EquatorialState random_equatorial(int t, CounterRng& rng);

// <theta|omega> for a single term; the |0> positions pin variables to zero,
// the |+> positions leave a Gauss sum over the support. O(t^3).
cplx equatorial_overlap(const EquatorialState& theta, const ProductStabTerm& term,
                        GaussSolver& solver);
cplx equatorial_overlap(const EquatorialState& theta, const ProductStabTerm& term);

// Dense expansion of an equatorial state, t <= kDenseMaxQubits. Test oracle.
DenseState dense_equatorial(const EquatorialState& theta);

struct FastNormOptions {
    double epsilon = 0.05;
    double pfail = 0.1;
    // Overrides the default L = ceil(8 / (epsilon^2 pfail)); the benchmark
    // path pins this so runtime isolates the k dependence.
    std::optional<std::size_t> fixed_samples;
    bool median_of_means = false;
};

// eta = (2^t / L) sum_j |<theta_j|psi>|^2; unbiased for <psi|psi>.
NormEstimate fastnorm(const SparseDecomposition& d, const FastNormOptions& opt, CounterRng& rng);

// Exact average of 2^t |<theta|psi>|^2 over all 4^t diagonal vectors at a
// fixed coupling matrix; equals <psi|psi> identically. t <= 8.
double exhaustive_diagonal_norm(const SparseDecomposition& d, const QuadraticFormZ4& couplings);

}  // namespace sparsestab
