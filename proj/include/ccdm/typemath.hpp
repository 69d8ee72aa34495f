#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccdm/bigint.hpp"
#include "ccdm/errors.hpp"

namespace ccdm {

// A probability vector over the alphabet {0, ..., k-1}.
// Entries are >= 0 and sum to 1 within 1e-12; k >= 1.
class Distribution {
public:
    explicit Distribution(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t a) const { return probs_[a]; }
    const std::vector<double>& probs() const { return probs_; }

    bool strictly_positive() const;
    double min_prob() const; // smallest entry, including zeros

private:
    std::vector<double> probs_;
};

// Parses "one number per line" or a JSON array of numbers. Rejects negative
// entries and sums outside [1 - 1e-9, 1 + 1e-9], then renormalizes to sum 1.
Distribution parse_distribution(std::string_view text);

// Symbol counts (n_0, ..., n_{k-1}) with n = sum >= 1. The induced type is
// the exact rational vector n_a / n.
class Composition {
public:
    explicit Composition(std::vector<std::uint32_t> counts);

    std::size_t size() const { return counts_.size(); }
    std::uint32_t count(std::size_t a) const { return counts_[a]; }
    const std::vector<std::uint32_t>& counts() const { return counts_; }
    std::uint32_t n() const { return n_; }

    Distribution type() const; // n_a / n as doubles

private:
    std::vector<std::uint32_t> counts_;
    std::uint32_t n_;
};

// |T| = multinomial(n; n_0, ..., n_{k-1}): the number of sequences with the
// given composition. Exact.
BigInt type_class_size(const Composition& comp);

// m = floor(log2 |T|), so 2^m <= |T| < 2^(m+1).
unsigned input_length(const Composition& comp);

// Everything a fixed-to-fixed matcher needs: the composition, the exact
// type-class size, and the input block length in bits.
struct CodeParams {
    Composition composition;
    BigInt type_class_size;
    unsigned m;

    static CodeParams derive(Composition comp);

    std::uint32_t n() const { return composition.n(); }
    std::size_t k() const { return composition.size(); }
};

// H(dist) in bits per symbol; zero-probability entries contribute 0.
double entropy(const Distribution& dist);

// D(phat || p) in bits. Requires supp(phat) inside supp(p).
double kl_divergence(const Distribution& phat, const Distribution& p);

// The n-type closest to dist in informational divergence, among types whose
// support lies inside supp(dist). Greedy incremental allocation: n unit
// increments, each given to the symbol with the smallest objective increase
//   (c+1) log2((c+1)/(n p_a)) - c log2(c/(n p_a)),
// lowest index on ties. The objective is separable and convex in the counts,
// so the greedy optimum is the exact argmin.
Composition quantize_to_ntype(const Distribution& dist, std::uint32_t n);

// Normalized divergence of the matcher: H(type) - m/n + D(type || dist).
double normalized_divergence(const Distribution& dist, const Composition& comp);

// k / (min_a dist(a) * n^2): bound on the divergence cost of quantizing dist
// to an n-type. Requires a strictly positive dist.
double quantization_gap_bound(const Distribution& dist, std::uint32_t n);

// entropy_value - k log2(n + k)/n - 1/n: lower bound on the rate m/n when
// evaluated at the entropy of the quantized type.
double rate_lower_bound(double entropy_value, std::uint32_t n, std::uint32_t k);

} // namespace ccdm
