#pragma once

#include <cstddef>
#include <vector>

#include "ccdm/typemath.hpp"

namespace ccdm {

// Drawing without replacement from a fixed composition: after drawing a
// symbol its remaining count decrements, so the next-symbol probability of
// symbol a is always (remaining count of a) / (remaining total).
class SourceModel {
public:
    explicit SourceModel(Composition initial);

    const Composition& initial_counts() const { return initial_; }
    const std::vector<std::uint32_t>& remaining_counts() const { return remaining_; }
    std::uint32_t remaining_total() const { return total_; }

    // Entry a = remaining_a / total as an exact rational; entries sum to 1.
    std::vector<Rational> next_symbol_distribution() const;

    void draw(Symbol a);

private:
    Composition initial_;
    std::vector<std::uint32_t> remaining_;
    std::uint32_t total_;
};

// Exact interval state observable from outside the coders: low = A/D and
// width = B/D with 0 <= A and A + B <= D.
struct IntervalState {
    Rational low;
    Rational width;
};

/*
 * Streaming matcher. The input interval starts as [0,1); each bit halves it
 * ('0' keeps the lower half, '1' the upper). The output partition splits
 * [0,1) by the next-symbol distribution of the drawing model, subintervals
 * in symbol order. Whenever the input interval lies entirely inside one
 * subinterval that symbol is a sure prefix: it is emitted and both intervals
 * are rescaled so the emitted subinterval becomes [0,1) again.
 *
 * State is the exact triple (A, B, D) with low = A/D, width = B/D. A bit b
 * maps (A, B, D) -> (2A + bB, B, 2D); emitting symbol a with cumulative
 * count C, own count c and total n' maps it to (A n' - C D, B n', D c).
 * All arithmetic is exact, so the finished output is exactly the reference
 * map's codeword for every input.
 *
 * Finalization after m bits descends through the subintervals containing
 * the lower border L; if the reached codeword's border is strictly below L
 * the lexicographic successor inside the class is taken instead (a border
 * equal to L counts as inside the half-open input interval).
 */
class StreamEncoder {
public:
    explicit StreamEncoder(CodeParams params);

    void push_bit(Bit b);                  // consumes one of the m input bits
    std::size_t bits_consumed() const { return bits_consumed_; }
    const SymbolSeq& emitted() const { return out_; } // sure prefix so far
    IntervalState state() const;

    SymbolSeq finish(); // requires all m bits pushed; returns the codeword

private:
    void materialize_pending();
    void emit_sure_symbols();
    bool surely_straddles() const;
    void recalibrate();
    void reduce_state();

    CodeParams params_;
    SourceModel model_;
    SymbolSeq out_;
    BigInt a_, b_, d_;              // low = a_/d_, width = b_/d_ (before pending bits)
    BigInt t0_, t1_, t2_, t3_, t4_; // scratch
    // Bits not yet folded into the triple: the true state is
    // A = (a_ << pend_bits_) + pend_val_ b_, D = d_ << pend_bits_. Folding is
    // deferred until the float shadow of the interval says an emission is
    // possible at all.
    unsigned long pend_val_ = 0;
    unsigned pend_bits_ = 0;
    double low_f_ = 0.0;   // never above the exact low by more than the guard
    double width_f_ = 1.0; // never above the exact width by more than the guard
    std::size_t bits_consumed_ = 0;
    unsigned emits_since_reduce_ = 0;
    bool finished_ = false;
};

/*
 * Streaming dematcher, the mirror image: symbols refine the state through
 * the output partition, and whenever the interval lies entirely inside one
 * half of [0,1) the corresponding bit is emitted and the half is rescaled
 * to [0,1). After all n symbols the remaining m - t bits are the big-endian
 * digits of floor(A 2^(m-t) / D).
 *
 * Strict mode rejects sequences in the type class that no input maps to:
 * the reached codeword interval must contain its own lower border's input
 * cell boundary, which reduces to an exact integer comparison on the final
 * state (see decode_stream for the contract).
 */
class StreamDecoder {
public:
    explicit StreamDecoder(CodeParams params, bool strict = true);

    void push_symbol(Symbol a);
    std::size_t symbols_consumed() const { return symbols_consumed_; }
    const BitSeq& emitted() const { return out_; } // sure bits so far
    IntervalState state() const;

    BitSeq finish(); // requires all n symbols pushed; returns the m bits

private:
    void emit_sure_bits();
    void reduce_state();

    void recalibrate();

    CodeParams params_;
    SourceModel model_;
    BitSeq out_;
    BigInt a_, b_, d_;
    BigInt t0_, t1_;
    double low_f_ = 0.0;   // float shadow, off the exact values by rounding only
    double width_f_ = 1.0;
    std::size_t symbols_consumed_ = 0;
    unsigned pushes_since_reduce_ = 0;
    bool strict_;
    bool all_bits_zero_ = true;
    bool finished_ = false;
};

// One-shot wrappers. encode_stream output is identical to ref_encode;
// decode_stream is identical to ref_decode, including strictness.
SymbolSeq encode_stream(const BitSeq& bits, const CodeParams& params);
BitSeq decode_stream(const SymbolSeq& seq, const CodeParams& params, bool strict = true);

} // namespace ccdm
