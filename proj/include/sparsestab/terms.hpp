#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sparsestab/magic.hpp"

namespace sparsestab {

enum class Mode { iid, correlated, exact_full };

std::string to_string(Mode mode);
Mode mode_from_string(std::string_view s);  // throws parse_error on unknown

// One stabilizer term: bit j set means qubit j is normalized |+>, clear
// means |0>. Coefficient carries magnitude and phase jointly.
struct ProductStabTerm {
    int t = 0;
    std::vector<std::uint64_t> bits;  // packed, qubit 0 = LSB of word 0
    cplx coeff;

    ProductStabTerm() = default;
    ProductStabTerm(int t, cplx coeff);

    bool bit(int j) const {
        return (bits[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1u;
    }
    void set_bit(int j, bool v);
    void flip_bit(int j);
    int plus_count() const;
    std::string bit_string() const;  // qubit 0 first

    // Unit phase coeff/|coeff|.
    cplx phase() const;
};

int hamming_distance(const ProductStabTerm& a, const ProductStabTerm& b);

struct SparseDecomposition {
    int t = 0;
    double phi = 0.0;
    Mode mode = Mode::iid;
    double delta = 0.0;
    double gamma = 0.0;
    std::size_t k = 0;
    double l1 = 0.0;
    std::uint64_t seed = 0;
    int group_size = 1;  // t+1 in correlated mode
    std::vector<ProductStabTerm> terms;

    // Container invariants (k == terms.size(), group layout, ...); throws
    // parse_error on violation.
    void check() const;
};

// conj(phase_a) * phase_b * 2^{-d_H/2}; per-qubit overlaps <0|+> = 2^{-1/2}.
cplx term_overlap(const ProductStabTerm& a, const ProductStabTerm& b);

// <d1|d2> over all term pairs, coefficients included. O(k1 k2 t/64).
cplx gram_dot(const SparseDecomposition& d1, const SparseDecomposition& d2);

// Sum of coeff_i times the tensor expansion of term i. t <= kDenseMaxQubits.
DenseState dense_expand(const SparseDecomposition& d);

// All 2^t tilde strings with their exact coefficients; reproduces the target
// state densely. Validation fixture, t <= 12.
SparseDecomposition exact_full(Phi phi, int t);

std::string serialize(const SparseDecomposition& d);
SparseDecomposition deserialize(std::string_view text);

}  // namespace sparsestab
