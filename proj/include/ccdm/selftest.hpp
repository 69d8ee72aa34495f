#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccdm/ranker.hpp"

namespace ccdm {

// Built-in diagnostic suites: streaming-vs-reference equivalence,
// round-trip identity, composition invariance and path-probability
// uniformity, over exhaustive small cases plus randomized trials.
struct SelftestOptions {
    std::uint32_t max_n = 12;   // exhaustive coverage up to this blocklength
    std::uint32_t trials = 1000; // randomized trials at larger n
    std::uint32_t random_n = 256; // blocklength for randomized trials
    std::uint64_t seed = 0xccd3 + 1;
    // Reference map used by the equivalence suite. Tests inject faulty
    // references here to prove the suite actually detects disagreement.
    std::function<SymbolSeq(const BitSeq&, const CodeParams&)> reference_encode;
};

struct SelftestReport {
    struct Suite {
        std::string name;
        std::uint64_t cases = 0;
        std::uint64_t failures = 0;
    };
    std::vector<Suite> suites;

    bool ok() const {
        for (const auto& s : suites)
            if (s.failures != 0) return false;
        return true;
    }
};

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& log);

} // namespace ccdm
