#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sparsestab {

// q(x) = sum_j d_j x_j + 2 sum_{j<k} J_jk x_j x_k (mod 4) on F_2^m.
// Couplings are stored symmetrically as per-variable bitmasks, diagonal clear.
struct QuadraticFormZ4 {
    int m = 0;
    std::vector<std::uint8_t> d;          // entries in {0,1,2,3}
    std::vector<std::uint64_t> rows;      // m rows of (m+63)/64 words each

    QuadraticFormZ4() = default;
    explicit QuadraticFormZ4(int m);

    std::size_t words() const { return (static_cast<std::size_t>(m) + 63) / 64; }
    bool coupling(int j, int k) const;
    void set_coupling(int j, int k, bool v);

    // q at a packed point; used by the brute-force path.
    int eval_q(const std::uint64_t* x) const;
};

// Exact value 0 or 2^{p/2} e^{i pi b/4}, b in {0..7}.
struct DiscreteComplex {
    bool zero = true;
    int p = 0;
    int b = 0;

    std::complex<double> to_complex() const;
    bool operator==(const DiscreteComplex&) const = default;
};

// Variable-elimination evaluator: sum_{x in F_2^m} i^{q(x)} in O(m^3).
// Holds scratch buffers so repeated calls do not allocate.
class GaussSolver {
public:
    DiscreteComplex eval(const QuadraticFormZ4& f);
    // Sum only over variables in `active` (others pinned to 0); `active` has
    // f.words() words.
    DiscreteComplex eval_masked(const QuadraticFormZ4& f, const std::uint64_t* active);

private:
    std::vector<std::uint8_t> d_;
    std::vector<std::uint64_t> rows_;
    std::vector<std::uint64_t> active_;
    std::vector<std::uint64_t> support_;
    std::vector<std::uint64_t> lambda_;
    std::vector<std::uint64_t> full_;
};

DiscreteComplex gauss_eval(const QuadraticFormZ4& f);

// Direct 2^m enumeration, m <= 20. Test oracle.
std::complex<double> gauss_brute(const QuadraticFormZ4& f);

}  // namespace sparsestab
