#include "ccdm/selftest.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "ccdm/coder.hpp"

namespace ccdm {

namespace {

// Exhaustive input coverage is capped here; bigger codebooks get sampled.
constexpr std::uint64_t kExhaustiveInputs = 4096;
constexpr std::uint64_t kUniformityClassLimit = 4096;

std::string comp_string(const Composition& comp) {
    std::string s = "(";
    for (std::size_t a = 0; a < comp.size(); ++a) {
        if (a) s.push_back(',');
        s += std::to_string(comp.count(a));
    }
    s.push_back(')');
    return s;
}

std::vector<double> random_probs(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> uniform(0.05, 1.0);
    std::vector<double> p(k);
    double sum = 0.0;
    for (double& v : p) sum += (v = uniform(rng));
    for (double& v : p) v /= sum;
    return p;
}

BitSeq random_bits(std::mt19937_64& rng, unsigned m) {
    BitSeq bits(m);
    for (auto& b : bits) b = static_cast<Bit>(rng() & 1);
    return bits;
}

// All sequences of the class in lexicographic order, for the uniformity
// suite on small classes.
void enumerate_class(std::vector<std::uint32_t>& remaining, SymbolSeq& prefix,
                     std::size_t n, const std::function<void(const SymbolSeq&)>& fn) {
    if (prefix.size() == n) {
        fn(prefix);
        return;
    }
    for (Symbol a = 0; a < remaining.size(); ++a) {
        if (remaining[a] == 0) continue;
        --remaining[a];
        prefix.push_back(a);
        enumerate_class(remaining, prefix, n, fn);
        prefix.pop_back();
        ++remaining[a];
    }
}

} // namespace

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& log) {
    auto reference = options.reference_encode
                         ? options.reference_encode
                         : [](const BitSeq& bits, const CodeParams& params) {
                               return ref_encode(bits, params);
                           };

    std::mt19937_64 rng(options.seed);

    // Composition corpus: quantizations of a few fixed and random target
    // distributions across every blocklength up to max_n.
    std::vector<std::vector<double>> dists = {
        {0.5, 0.5},
        {0.0722, 0.1654, 0.3209, 0.4415},
        {0.7, 0.2, 0.1},
        {0.5, 0.5, 0.0},
    };
    for (std::size_t k = 2; k <= 5; ++k)
        for (int repeat = 0; repeat < 2; ++repeat)
            dists.push_back(random_probs(rng, k));

    std::set<std::vector<std::uint32_t>> seen;
    std::vector<CodeParams> corpus;
    for (const auto& probs : dists) {
        Distribution dist(probs);
        for (std::uint32_t n = 1; n <= options.max_n; ++n) {
            Composition comp = quantize_to_ntype(dist, n);
            if (seen.insert(comp.counts()).second)
                corpus.push_back(CodeParams::derive(std::move(comp)));
        }
    }

    log << "compositions covered:";
    for (const auto& params : corpus) log << ' ' << comp_string(params.composition);
    log << "\nseed: " << options.seed << "\n";

    SelftestReport report;
    report.suites = {{"oracle-equivalence", 0, 0},
                     {"round-trip", 0, 0},
                     {"composition", 0, 0},
                     {"uniformity", 0, 0}};
    auto& equivalence = report.suites[0];
    auto& roundtrip = report.suites[1];
    auto& composition = report.suites[2];
    auto& uniformity = report.suites[3];

    auto check_one = [&](const BitSeq& bits, const CodeParams& params) {
        SymbolSeq streamed = encode_stream(bits, params);
        SymbolSeq referenced = reference(bits, params);

        ++equivalence.cases;
        bool decode_matches = false;
        try {
            decode_matches = decode_stream(streamed, params) ==
                             ref_decode(streamed, params);
        } catch (const Error&) {
        }
        if (streamed != referenced || !decode_matches) ++equivalence.failures;

        ++roundtrip.cases;
        try {
            if (decode_stream(streamed, params) != bits) ++roundtrip.failures;
        } catch (const Error&) {
            ++roundtrip.failures;
        }

        ++composition.cases;
        std::vector<std::uint32_t> counts(params.k(), 0);
        bool in_alphabet = streamed.size() == params.n();
        for (Symbol s : streamed) {
            if (s >= counts.size()) {
                in_alphabet = false;
                break;
            }
            ++counts[s];
        }
        if (!in_alphabet || counts != params.composition.counts())
            ++composition.failures;
    };

    for (const auto& params : corpus) {
        if (params.type_class_size <= kExhaustiveInputs * 2) {
            // Whole codebook: every input block.
            BitSeq bits(params.m, 0);
            for (std::uint64_t j = 0; j < (std::uint64_t{1} << params.m); ++j) {
                for (unsigned pos = 0; pos < params.m; ++pos)
                    bits[params.m - 1 - pos] = (j >> pos) & 1;
                check_one(bits, params);
            }
        } else {
            for (std::uint32_t trial = 0; trial < std::min(options.trials, 256u);
                 ++trial)
                check_one(random_bits(rng, params.m), params);
        }

        if (params.type_class_size <= kUniformityClassLimit) {
            // Draw-without-replacement path probability of every sequence in
            // the class must be exactly 1/|T|.
            Rational expected(1, 1);
            expected /= Rational(params.type_class_size);
            auto remaining = params.composition.counts();
            SymbolSeq prefix;
            enumerate_class(remaining, prefix, params.n(),
                            [&](const SymbolSeq& seq) {
                                ++uniformity.cases;
                                SourceModel model(params.composition);
                                Rational path(1, 1);
                                for (Symbol s : seq) {
                                    path *= model.next_symbol_distribution()[s];
                                    model.draw(s);
                                }
                                if (path != expected) ++uniformity.failures;
                            });
        }
    }

    // Randomized trials at a larger blocklength.
    if (options.trials > 0 && options.random_n > 0) {
        Distribution dist(std::vector<double>{0.0722, 0.1654, 0.3209, 0.4415});
        CodeParams params =
            CodeParams::derive(quantize_to_ntype(dist, options.random_n));
        for (std::uint32_t trial = 0; trial < options.trials; ++trial)
            check_one(random_bits(rng, params.m), params);
    }

    log << std::left << std::setw(20) << "suite" << std::right << std::setw(10)
        << "cases" << std::setw(10) << "failures" << "\n";
    for (const auto& suite : report.suites)
        log << std::left << std::setw(20) << suite.name << std::right
            << std::setw(10) << suite.cases << std::setw(10) << suite.failures
            << "\n";
    log << (report.ok() ? "all suites passed" : "FAILURES detected") << "\n";
    return report;
}

} // namespace ccdm
