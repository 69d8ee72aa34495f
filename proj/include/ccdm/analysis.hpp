#pragma once

#include <iosfwd>
#include <vector>

#include "ccdm/typemath.hpp"

namespace ccdm {

// One blocklength's worth of matcher figures for a fixed target
// distribution: the quantized composition and the closed-form rate,
// divergence and bound values.
struct SweepRecord {
    std::uint32_t n;
    Composition counts;
    unsigned m;
    double rate;       // m / n
    double h_bar;      // H(type)
    double ndiv;       // h_bar - rate + kl_gap
    double kl_gap;     // D(type || dist)
    double gap_bound;  // k / (min dist * n^2), NaN when dist has zeros
    double rate_bound; // rate_lower_bound(h_bar, n, k); never exceeds rate
};

// Evaluates one record per blocklength.
std::vector<SweepRecord> sweep(const Distribution& dist,
                               const std::vector<std::uint32_t>& n_values);

// The 50 log-spaced blocklengths from 10 to 10000 used by the reference
// divergence and rate series.
const std::vector<std::uint32_t>& preset_grid();

// Direct evaluation of the normalized divergence by enumerating all 2^m
// codewords: (1/n) sum_c 2^-m log2(2^-m / P(c)). Agrees with
// normalized_divergence to within accumulated rounding (~1e-9).
double empirical_divergence(const Distribution& dist, const CodeParams& params,
                            unsigned max_m = 20);

enum class ReportFormat { csv, json };

// Writes the records with 15 significant digits in the stable column order
// n, m, rate, h_bar, ndiv, kl_gap, gap_bound, rate_bound, counts.
// CSV: one header plus one row per record, counts joined by ';'.
// JSON: an array of flat objects, counts as an integer array, NaN as null.
void emit_report(const std::vector<SweepRecord>& records, ReportFormat format,
                 std::ostream& out);

// Parses emit_report's JSON back into records (null -> NaN).
std::vector<SweepRecord> read_report_json(std::istream& in);

} // namespace ccdm
