#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "testutil.hpp"

using namespace ccdm;
using namespace testutil;

TEST_CASE("distribution validates its entries") {
    CHECK_THROWS_AS(Distribution({}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({0.5, -0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({0.5, std::nan("")}), std::invalid_argument);

    Distribution d({0.25, 0.0, 0.75});
    CHECK(d.size() == 3);
    CHECK(d[2] == 0.75);
    CHECK_FALSE(d.strictly_positive());
    CHECK(d.min_prob() == 0.0);
    CHECK(Distribution({0.2, 0.3, 0.5}).strictly_positive());
    CHECK(Distribution({0.2, 0.3, 0.5}).min_prob() == 0.2);
}

TEST_CASE("parse_distribution reads lines and JSON arrays") {
    Distribution lines = parse_distribution("0.25\n\n  0.75  \n");
    CHECK(lines.size() == 2);
    CHECK(lines[0] == 0.25);

    Distribution json = parse_distribution(" [0.1, 0.2, 0.7]");
    CHECK(json.size() == 3);
    CHECK(json[2] == 0.7);

    // Sums inside the 1e-9 window are renormalized to exactly 1.
    Distribution scaled = parse_distribution("0.2500000001\n0.75\n");
    CHECK(scaled[0] + scaled[1] == 1.0);

    CHECK_THROWS_AS(parse_distribution(""), FormatError);
    CHECK_THROWS_AS(parse_distribution("0.5\nabc\n"), FormatError);
    CHECK_THROWS_AS(parse_distribution("0.5\n0.6\n"), FormatError);
    CHECK_THROWS_AS(parse_distribution("-0.5\n1.5\n"), FormatError);
    CHECK_THROWS_AS(parse_distribution("[0.5, \"x\"]"), FormatError);
    CHECK_THROWS_AS(parse_distribution("[0.5, 0.5"), FormatError);
    CHECK_THROWS_AS(parse_distribution("{\"a\": 1}"), FormatError);
}

TEST_CASE("composition validates and exposes its type") {
    CHECK_THROWS_AS(Composition({}), std::invalid_argument);
    CHECK_THROWS_AS(Composition({0, 0, 0}), std::invalid_argument);

    Composition comp({1, 0, 3});
    CHECK(comp.n() == 4);
    CHECK(comp.size() == 3);
    CHECK(comp.count(2) == 3);
    Distribution type = comp.type();
    CHECK(type[0] == 0.25);
    CHECK(type[1] == 0.0);
    CHECK(type[2] == 0.75);
}

TEST_CASE("type_class_size is the exact multinomial") {
    CHECK(type_class_size(Composition({2, 2})) == 6);
    CHECK(type_class_size(Composition({1, 1, 2})) == 12);
    CHECK(type_class_size(Composition({1, 1, 1, 1})) == 24);
    CHECK(type_class_size(Composition({5})) == 1);
    CHECK(type_class_size(Composition({0, 4})) == 1);
    CHECK(type_class_size(Composition({3, 2, 1})) == 60);

    // Counting the class by brute force must agree.
    for (auto counts : {std::vector<std::uint32_t>{2, 3}, {1, 2, 2}, {0, 2, 1, 2}}) {
        Composition comp(counts);
        std::uint64_t seen = 0;
        enumerate_type_class(comp, [&](const SymbolSeq&) { ++seen; });
        CHECK(type_class_size(comp) == seen);
    }

    // 40-digit value, exercises the big-integer path: C(200, 100).
    CHECK(type_class_size(Composition({100, 100})).get_str() ==
          "90548514656103281165404177077484163874504589675413336841320");
}

TEST_CASE("input_length is floor(log2 |T|)") {
    CHECK(input_length(Composition({2, 2})) == 2);  // |T| = 6
    CHECK(input_length(Composition({1, 1, 2})) == 3); // |T| = 12
    CHECK(input_length(Composition({7})) == 0);       // |T| = 1

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Distribution dist = random_distribution(rng, 2 + trial % 4);
        Composition comp = quantize_to_ntype(dist, 5 + trial);
        unsigned m = input_length(comp);
        BigInt size = type_class_size(comp);
        CHECK((BigInt(1) << m) <= size);
        CHECK(size < (BigInt(1) << (m + 1)));
    }
}

TEST_CASE("CodeParams::derive bundles the code constants") {
    CodeParams params = CodeParams::derive(Composition({2, 2}));
    CHECK(params.n() == 4);
    CHECK(params.k() == 2);
    CHECK(params.m == 2);
    CHECK(params.type_class_size == 6);
}

TEST_CASE("entropy and divergence match closed forms") {
    CHECK(entropy(Distribution({0.5, 0.5})) == 1.0);
    CHECK(entropy(Distribution({1.0, 0.0})) == 0.0);
    CHECK(entropy(Distribution({0.25, 0.25, 0.25, 0.25})) == 2.0);
    CHECK(std::fabs(entropy(figure_distribution()) - 1.750114273000667) < 1e-12);

    Distribution p({0.5, 0.5});
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(kl_divergence(Distribution({1.0, 0.0}), p) == 1.0);
    double d = kl_divergence(Distribution({0.25, 0.75}), p);
    CHECK(std::fabs(d - (0.25 * std::log2(0.5) + 0.75 * std::log2(1.5))) < 1e-15);

    CHECK_THROWS_AS(kl_divergence(Distribution({0.5, 0.5}), Distribution({1.0, 0.0})),
                    SupportViolation);
    CHECK_THROWS_AS(kl_divergence(Distribution({1.0}), p), std::invalid_argument);
    // Zeros in phat are fine as long as the support stays inside supp(p).
    CHECK(kl_divergence(Distribution({0.0, 1.0}), Distribution({0.0, 1.0})) == 0.0);
}

TEST_CASE("quantizer matches the brute-force divergence argmin") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t k = 2 + trial % 3;
        Distribution dist = random_distribution(rng, k);
        for (std::uint32_t n : {1u, 2u, 5u, 9u, 12u}) {
            Composition greedy = quantize_to_ntype(dist, n);
            std::vector<std::uint32_t> brute = brute_force_quantize(dist, n);
            CHECK(greedy.counts() == brute);
        }
    }
}

TEST_CASE("quantizer keeps zero-probability symbols at zero") {
    Composition comp = quantize_to_ntype(Distribution({0.5, 0.0, 0.5}), 9);
    CHECK(comp.count(1) == 0);
    CHECK(comp.n() == 9);

    // Symmetric tie: the lowest index wins the increment.
    CHECK(quantize_to_ntype(Distribution({0.5, 0.5}), 1).counts() ==
          std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("quantization divergence stays below the stated bound") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t k = 2 + trial % 4;
        Distribution dist = random_distribution(rng, k);
        std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 60);
        double kl = kl_divergence(quantize_to_ntype(dist, n).type(), dist);
        CHECK(kl < quantization_gap_bound(dist, n));
    }
    CHECK_THROWS_AS(quantization_gap_bound(Distribution({1.0, 0.0}), 4),
                    ZeroProbability);
    CHECK_THROWS_AS(quantization_gap_bound(Distribution({0.5, 0.5}), 0),
                    std::invalid_argument);
}

TEST_CASE("rate_lower_bound evaluates its closed form") {
    // h - k log2(n + k) / n - 1/n, spot-checked by hand.
    double h = 1.5;
    double expected = h - 2.0 * std::log2(12.0) / 10.0 - 0.1;
    CHECK(std::fabs(rate_lower_bound(h, 10, 2) - expected) < 1e-15);
    CHECK_THROWS_AS(rate_lower_bound(1.0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(rate_lower_bound(1.0, 10, 0), std::invalid_argument);
}

TEST_CASE("normalized divergence composes entropy, rate and divergence gap") {
    const Distribution& dist = figure_distribution();
    Composition comp = quantize_to_ntype(dist, 10);
    double ndiv = normalized_divergence(dist, comp);
    CHECK(std::fabs(ndiv - 0.562126661727604) < 1e-9);
    double parts = entropy(comp.type()) -
                   static_cast<double>(input_length(comp)) / comp.n() +
                   kl_divergence(comp.type(), dist);
    CHECK(ndiv == parts);
}
