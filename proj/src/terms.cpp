#include "sparsestab/terms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "sparsestab/errors.hpp"

namespace sparsestab {

namespace {
std::size_t word_count(int t) { return (static_cast<std::size_t>(t) + 63) / 64; }
}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::iid: return "iid";
        case Mode::correlated: return "correlated";
        case Mode::exact_full: return "exact_full";
    }
    throw std::logic_error("unreachable mode");
}

Mode mode_from_string(std::string_view s) {
    if (s == "iid") return Mode::iid;
    if (s == "correlated") return Mode::correlated;
    if (s == "exact_full") return Mode::exact_full;
    throw parse_error("unknown mode: \"" + std::string(s) + "\"");
}

ProductStabTerm::ProductStabTerm(int t, cplx coeff)
    : t(t), bits(word_count(t), 0), coeff(coeff) {
    if (t < 1) throw std::domain_error("ProductStabTerm: t must be >= 1");
}

void ProductStabTerm::set_bit(int j, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (j & 63);
    if (v)
        bits[static_cast<std::size_t>(j) >> 6] |= m;
    else
        bits[static_cast<std::size_t>(j) >> 6] &= ~m;
}

void ProductStabTerm::flip_bit(int j) {
    bits[static_cast<std::size_t>(j) >> 6] ^= std::uint64_t{1} << (j & 63);
}

int ProductStabTerm::plus_count() const {
    int c = 0;
    for (std::uint64_t w : bits) c += std::popcount(w);
    return c;
}

std::string ProductStabTerm::bit_string() const {
    std::string s(static_cast<std::size_t>(t), '0');
    for (int j = 0; j < t; ++j)
        if (bit(j)) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

cplx ProductStabTerm::phase() const {
    const double m = std::abs(coeff);
    if (m == 0.0) throw std::domain_error("term coefficient must be nonzero");
    return coeff / m;
}

int hamming_distance(const ProductStabTerm& a, const ProductStabTerm& b) {
    if (a.t != b.t) throw std::invalid_argument("hamming_distance: qubit counts differ");
    int d = 0;
    for (std::size_t w = 0; w < a.bits.size(); ++w) d += std::popcount(a.bits[w] ^ b.bits[w]);
    return d;
}

cplx term_overlap(const ProductStabTerm& a, const ProductStabTerm& b) {
    const int d = hamming_distance(a, b);
    return std::conj(a.phase()) * b.phase() * std::exp2(-0.5 * d);
}

cplx gram_dot(const SparseDecomposition& d1, const SparseDecomposition& d2) {
    if (d1.t != d2.t) throw std::invalid_argument("gram_dot: qubit counts differ");
    // Fixed-order accumulation; overlaps are real nonnegative, phases come
    // from the coefficients alone.
    cplx acc = 0.0;
    for (const ProductStabTerm& a : d1.terms) {
        for (const ProductStabTerm& b : d2.terms) {
            const int d = hamming_distance(a, b);
            acc += std::conj(a.coeff) * b.coeff * std::exp2(-0.5 * d);
        }
    }
    return acc;
}

DenseState dense_expand(const SparseDecomposition& d) {
    if (d.t > kDenseMaxQubits) throw std::length_error("dense_expand: t exceeds dense cap");
    DenseState out;
    out.t = d.t;
    out.amp.assign(std::size_t{1} << d.t, cplx{});
    for (const ProductStabTerm& term : d.terms) {
        std::uint64_t support = 0;
        for (int j = 0; j < d.t; ++j)
            if (term.bit(j)) support |= std::uint64_t{1} << j;
        const cplx a = term.coeff * std::exp2(-0.5 * term.plus_count());
        // Enumerate submasks of the |+> support (indices with |0> are pinned).
        std::uint64_t x = support;
        for (;;) {
            out.amp[x] += a;
            if (x == 0) break;
            x = (x - 1) & support;
        }
    }
    return out;
}

SparseDecomposition exact_full(Phi phi, int t) {
    if (t < 1 || t > 12) throw std::domain_error("exact_full: t must be in [1, 12]");
    const TildeCoeffs c = tilde_coeffs(phi);
    SparseDecomposition d;
    d.t = t;
    d.phi = phi.value();
    d.mode = Mode::exact_full;
    d.k = std::size_t{1} << t;
    d.l1 = l1_norm(phi, t);
    d.group_size = 1;
    d.terms.reserve(d.k);
    for (std::uint64_t x = 0; x < d.k; ++x) {
        ProductStabTerm term(t, 1.0);
        cplx coeff = 1.0;
        for (int j = 0; j < t; ++j) {
            if ((x >> j) & 1u) {
                term.set_bit(j, true);
                coeff *= c.c1;
            } else {
                coeff *= c.c0;
            }
        }
        term.coeff = coeff;
        d.terms.push_back(std::move(term));
    }
    return d;
}

void SparseDecomposition::check() const {
    if (t < 1) throw parse_error("decomposition: t must be >= 1");
    if (k != terms.size())
        throw parse_error("decomposition: k field (" + std::to_string(k) +
                          ") does not match terms length (" + std::to_string(terms.size()) + ")");
    if (group_size < 1) throw parse_error("decomposition: group_size must be >= 1");
    if (mode == Mode::correlated) {
        if (group_size != t + 1) throw parse_error("decomposition: correlated group_size must be t+1");
        if (k == 0 || k % static_cast<std::size_t>(group_size) != 0)
            throw parse_error("decomposition: correlated k must be a positive multiple of t+1");
    }
    for (const ProductStabTerm& term : terms) {
        if (term.t != t) throw parse_error("decomposition: term qubit count mismatch");
        if (!std::isfinite(term.coeff.real()) || !std::isfinite(term.coeff.imag()) ||
            std::abs(term.coeff) == 0.0)
            throw parse_error("decomposition: term coefficient must be finite and nonzero");
    }
    if (mode == Mode::correlated) {
        // Each group is a base string followed by its t single-bit flips.
        for (std::size_t g = 0; g * static_cast<std::size_t>(group_size) < k; ++g) {
            const ProductStabTerm& base = terms[g * static_cast<std::size_t>(group_size)];
            for (int j = 0; j < t; ++j) {
                const ProductStabTerm& flip = terms[g * static_cast<std::size_t>(group_size) + 1 +
                                                    static_cast<std::size_t>(j)];
                ProductStabTerm expect = base;
                expect.flip_bit(j);
                if (expect.bits != flip.bits)
                    throw parse_error("decomposition: correlated group " + std::to_string(g) +
                                      " is not base followed by single-bit flips");
            }
        }
    }
}

std::string serialize(const SparseDecomposition& d) {
    d.check();
    nlohmann::json j;
    j["t"] = d.t;
    j["phi"] = d.phi;
    j["mode"] = to_string(d.mode);
    j["delta"] = d.delta;
    j["gamma"] = d.gamma;
    j["k"] = d.k;
    j["l1"] = d.l1;
    j["seed"] = std::to_string(d.seed);
    j["group_size"] = d.group_size;
    nlohmann::json terms = nlohmann::json::array();
    for (const ProductStabTerm& term : d.terms) {
        terms.push_back({{"bits", term.bit_string()},
                         {"re", term.coeff.real()},
                         {"im", term.coeff.imag()}});
    }
    j["terms"] = std::move(terms);
    return j.dump(1) + "\n";
}

namespace {

template <typename T>
T require_field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw parse_error(std::string("missing field \"") + name + "\"");
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("field \"") + name + "\": " + e.what());
    }
}

}  // namespace

SparseDecomposition deserialize(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("decomposition parse error: ") + e.what());
    }
    SparseDecomposition d;
    d.t = require_field<int>(j, "t");
    d.phi = require_field<double>(j, "phi");
    d.mode = mode_from_string(require_field<std::string>(j, "mode"));
    d.delta = require_field<double>(j, "delta");
    d.gamma = require_field<double>(j, "gamma");
    d.k = require_field<std::size_t>(j, "k");
    d.l1 = require_field<double>(j, "l1");
    d.group_size = require_field<int>(j, "group_size");
    const std::string seed = require_field<std::string>(j, "seed");
    try {
        std::size_t pos = 0;
        d.seed = std::stoull(seed, &pos);
        if (pos != seed.size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
        throw parse_error("field \"seed\": not a uint64 decimal string");
    }
    const nlohmann::json terms = require_field<nlohmann::json>(j, "terms");
    if (!terms.is_array()) throw parse_error("field \"terms\": expected an array");
    if (d.t < 1) throw parse_error("field \"t\": must be >= 1");
    std::size_t line = 0;
    for (const nlohmann::json& tj : terms) {
        ++line;
        const std::string bits = require_field<std::string>(tj, "bits");
        if (bits.size() != static_cast<std::size_t>(d.t))
            throw parse_error("term " + std::to_string(line) + ": bits length != t");
        ProductStabTerm term(d.t, 1.0);
        for (int q = 0; q < d.t; ++q) {
            const char c = bits[static_cast<std::size_t>(q)];
            if (c != '0' && c != '1')
                throw parse_error("term " + std::to_string(line) + ": bits must be 0/1");
            term.set_bit(q, c == '1');
        }
        term.coeff = cplx(require_field<double>(tj, "re"), require_field<double>(tj, "im"));
        d.terms.push_back(std::move(term));
    }
    d.check();
    return d;
}

}  // namespace sparsestab
