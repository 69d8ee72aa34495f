#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "ccdm/coder.hpp"
#include "ccdm/ranker.hpp"
#include "testutil.hpp"

using namespace ccdm;
using namespace testutil;

namespace {

Rational ratio(unsigned long num, unsigned long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Interval of the symbol prefix under drawing without replacement, and the
// updated remaining counts. The coders must place their rescaled state
// exactly inside this frame.
struct CellFrame {
    Rational low{0};
    Rational width{1};
    std::vector<std::uint32_t> remaining;

    explicit CellFrame(const Composition& comp) : remaining(comp.counts()) {}

    void advance(Symbol a) {
        unsigned long total = std::accumulate(remaining.begin(), remaining.end(), 0ul);
        unsigned long below = 0;
        for (Symbol s = 0; s < a; ++s) below += remaining[s];
        low += width * ratio(below, total);
        width *= ratio(remaining[a], total);
        --remaining[a];
    }
};

} // namespace

TEST_CASE("source model draws without replacement") {
    SourceModel model(Composition({2, 2}));
    CHECK(model.remaining_total() == 4);
    CHECK(model.next_symbol_distribution() ==
          std::vector<Rational>{ratio(1, 2), ratio(1, 2)});

    model.draw(0);
    CHECK(model.next_symbol_distribution() ==
          std::vector<Rational>{ratio(1, 3), ratio(2, 3)});

    model.draw(0);
    CHECK(model.next_symbol_distribution() ==
          std::vector<Rational>{Rational(0), Rational(1)});
    CHECK_THROWS_AS(model.draw(0), CompositionMismatch);

    model.draw(1);
    model.draw(1);
    CHECK(model.remaining_total() == 0);
    CHECK_THROWS_AS(model.draw(1), Exhausted);
    CHECK_THROWS_AS(model.next_symbol_distribution(), Exhausted);
}

TEST_CASE("next-symbol distributions sum to exactly one") {
    SourceModel model(Composition({3, 0, 2, 1}));
    while (model.remaining_total() > 0) {
        auto dist = model.next_symbol_distribution();
        Rational sum = std::accumulate(dist.begin(), dist.end(), Rational(0));
        CHECK(sum == 1);
        for (Symbol a = 0; a < dist.size(); ++a) {
            if (dist[a] > 0) {
                model.draw(a);
                break;
            }
        }
    }
}

TEST_CASE("streaming encoder reproduces the reference map exhaustively") {
    for (const auto& counts :
         {std::vector<std::uint32_t>{2, 2}, {1, 1, 2}, {3, 2, 1}, {0, 3, 1}, {4, 1}}) {
        CodeParams params = CodeParams::derive(Composition(counts));
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << params.m); ++j) {
            BitSeq block = bits_of_index(j, params.m);
            SymbolSeq reference = ref_encode(block, params);

            StreamEncoder enc(params);
            SymbolSeq sure;
            for (Bit b : block) {
                enc.push_bit(b);
                // The sure prefix only grows and always prefixes the result.
                CHECK(enc.emitted().size() >= sure.size());
                sure = enc.emitted();
                CHECK(std::equal(sure.begin(), sure.end(), reference.begin()));
            }
            CHECK(enc.finish() == reference);

            CHECK(decode_stream(reference, params) == block);
            CHECK(ref_decode(reference, params) == block);
        }
    }
}

TEST_CASE("sure symbols appear as soon as the interval settles") {
    CodeParams params = CodeParams::derive(Composition({2, 2}));
    StreamEncoder enc(params);
    enc.push_bit(1);
    // Both inputs starting '1' map to codewords starting 1.
    CHECK(enc.emitted() == symbols("1"));
    enc.push_bit(0);
    CHECK(enc.finish() == symbols("1001"));
}

TEST_CASE("encoder state is the exact rescaled input interval") {
    CodeParams params =
        CodeParams::derive(quantize_to_ntype(figure_distribution(), 24));
    REQUIRE(params.m >= 30);

    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 4; ++trial) {
        BitSeq block = random_bits(rng, params.m);
        StreamEncoder enc(params);
        CellFrame frame(params.composition);
        std::size_t folded = 0;
        BigInt value = 0;

        for (unsigned t = 0; t < params.m; ++t) {
            enc.push_bit(block[t]);
            value = 2 * value + block[t];
            for (; folded < enc.emitted().size(); ++folded)
                frame.advance(enc.emitted()[folded]);

            // Undoing the emitted-cell rescaling must recover the input
            // interval [v 2^-t, (v+1) 2^-t) exactly.
            IntervalState st = enc.state();
            Rational pow2{BigInt(1) << (t + 1)};
            CHECK(frame.low + frame.width * st.low == Rational(value) / pow2);
            CHECK(frame.width * st.width == Rational(1) / pow2);
            CHECK(st.low >= 0);
            CHECK(st.low + st.width <= 1);
        }
        CHECK(enc.finish() == ref_encode(block, params));
    }
}

TEST_CASE("decoder state is the exact codeword cell in bit coordinates") {
    CodeParams params =
        CodeParams::derive(quantize_to_ntype(figure_distribution(), 24));
    std::mt19937_64 rng(73);

    for (int trial = 0; trial < 4; ++trial) {
        BitSeq block = random_bits(rng, params.m);
        SymbolSeq codeword = ref_encode(block, params);

        StreamDecoder dec(params);
        CellFrame cell(params.composition);
        Rational bit_low{0}, bit_width{1};
        std::size_t folded = 0;

        for (Symbol a : codeword) {
            dec.push_symbol(a);
            cell.advance(a);
            for (; folded < dec.emitted().size(); ++folded) {
                bit_width /= 2;
                if (dec.emitted()[folded]) bit_low += bit_width;
            }
            IntervalState st = dec.state();
            CHECK(bit_low + bit_width * st.low == cell.low);
            CHECK(bit_width * st.width == cell.width);
        }

        CHECK(bit_str(block).rfind(bit_str(dec.emitted()), 0) == 0);
        CHECK(dec.finish() == block);
    }
}

TEST_CASE("coders reject wrong block shapes") {
    CodeParams params = CodeParams::derive(Composition({2, 2}));

    StreamEncoder enc(params);
    enc.push_bit(0);
    CHECK_THROWS_AS(enc.finish(), LengthMismatch);

    StreamEncoder enc2(params);
    enc2.push_bit(0);
    enc2.push_bit(1);
    CHECK_THROWS_AS(enc2.push_bit(0), LengthMismatch);

    CHECK_THROWS_AS(encode_stream(bits("011"), params), LengthMismatch);
    CHECK_THROWS_AS(decode_stream(symbols("00111"), params), CompositionMismatch);

    StreamDecoder dec(params);
    CHECK_THROWS_AS(dec.push_symbol(2), CompositionMismatch);
    dec.push_symbol(0);
    dec.push_symbol(0);
    CHECK_THROWS_AS(dec.push_symbol(0), CompositionMismatch); // count exhausted
    CHECK_THROWS_AS(dec.finish(), CompositionMismatch);       // two symbols short
    dec.push_symbol(1);
    dec.push_symbol(1);
    CHECK_THROWS_AS(dec.push_symbol(1), CompositionMismatch); // block complete
    CHECK(dec.finish() == bits("00"));
}

TEST_CASE("strict decoding rejects class members outside the codebook") {
    CodeParams params = CodeParams::derive(Composition({2, 2}));
    CHECK_THROWS_AS(decode_stream(symbols("0101"), params), NotACodeword);
    CHECK(decode_stream(symbols("0101"), params, false) == bits("00"));

    StreamDecoder lenient(params, false);
    for (Symbol a : symbols("0101")) lenient.push_symbol(a);
    CHECK(lenient.finish() == bits("00"));

    // Every class member either decodes strictly or throws, and the strict
    // accepts are exactly the codewords.
    std::uint64_t accepted = 0;
    enumerate_type_class(params.composition, [&](const SymbolSeq& seq) {
        try {
            BitSeq block = decode_stream(seq, params);
            CHECK(ref_encode(block, params) == seq);
            ++accepted;
        } catch (const NotACodeword&) {
            CHECK(ref_encode(decode_stream(seq, params, false), params) != seq);
        }
    });
    CHECK(accepted == 4);
}

TEST_CASE("degenerate codes with no input bits still emit their codeword") {
    CodeParams lone = CodeParams::derive(Composition({0, 5}));
    CHECK(lone.m == 0);
    CHECK(encode_stream(bits(""), lone) == symbols("11111"));
    CHECK(decode_stream(symbols("11111"), lone) == bits(""));

    CodeParams unary = CodeParams::derive(Composition({1}));
    CHECK(encode_stream(bits(""), unary) == symbols("0"));
    CHECK(decode_stream(symbols("0"), unary) == bits(""));
}

TEST_CASE("streaming and reference maps agree on medium random blocks") {
    std::mt19937_64 rng(97);
    for (const Distribution& dist :
         {figure_distribution(), Distribution({0.5, 0.0, 0.3, 0.2})}) {
        CodeParams params = CodeParams::derive(quantize_to_ntype(dist, 300));
        for (int trial = 0; trial < 10; ++trial) {
            BitSeq block = random_bits(rng, params.m);
            SymbolSeq streamed = encode_stream(block, params);
            CHECK(streamed == ref_encode(block, params));
            CHECK(decode_stream(streamed, params) == block);
            CHECK(ref_decode(streamed, params) == block);
        }
    }
}
