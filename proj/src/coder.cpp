#include "ccdm/coder.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace ccdm {

namespace {

// State triples grow ~13 bits per emission between reductions; a periodic
// gcd keeps them near the information-theoretic minimum without paying for
// a gcd on every step. The periods balance gcd cost against the growth.
#ifndef CCDM_REDUCE_PERIOD_ENC
#define CCDM_REDUCE_PERIOD_ENC 384
#endif
#ifndef CCDM_REDUCE_PERIOD_DEC
#define CCDM_REDUCE_PERIOD_DEC 384
#endif
constexpr unsigned kReducePeriodEnc = CCDM_REDUCE_PERIOD_ENC;
constexpr unsigned kReducePeriodDec = CCDM_REDUCE_PERIOD_DEC;

// Float shadows of the interval drift by rounding only between exact
// recalibrations, so staying this far away from a partition border (in
// units of the remaining total) errs toward checking, never toward
// skipping a possible emission.
constexpr double kBorderGuard = 1e-6;
constexpr double kGateSlack = 1e-6;

constexpr unsigned kMaxPendingBits = std::numeric_limits<unsigned long>::digits - 1;

void reduce_triple(BigInt& a, BigInt& b, BigInt& d, BigInt& scratch) {
    mpz_gcd(scratch.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(scratch.get_mpz_t(), scratch.get_mpz_t(), d.get_mpz_t());
    if (mpz_cmp_ui(scratch.get_mpz_t(), 1) != 0) {
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), scratch.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), scratch.get_mpz_t());
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), scratch.get_mpz_t());
    }
}

} // namespace

SourceModel::SourceModel(Composition initial)
    : initial_(std::move(initial)),
      remaining_(initial_.counts()),
      total_(initial_.n()) {}

std::vector<Rational> SourceModel::next_symbol_distribution() const {
    if (total_ == 0) throw Exhausted("all symbols already drawn");
    std::vector<Rational> probs;
    probs.reserve(remaining_.size());
    for (std::uint32_t c : remaining_) {
        Rational p(static_cast<unsigned long>(c), static_cast<unsigned long>(total_));
        p.canonicalize();
        probs.push_back(std::move(p));
    }
    return probs;
}

void SourceModel::draw(Symbol a) {
    if (total_ == 0) throw Exhausted("all symbols already drawn");
    if (a >= remaining_.size() || remaining_[a] == 0)
        throw CompositionMismatch("symbol not available in the remaining counts");
    --remaining_[a];
    --total_;
}

StreamEncoder::StreamEncoder(CodeParams params)
    : params_(std::move(params)), model_(params_.composition), a_(0), b_(1), d_(1) {
    emit_sure_symbols(); // forced prefixes exist when a subinterval is all of [0,1)
    recalibrate();
}

void StreamEncoder::reduce_state() {
    reduce_triple(a_, b_, d_, t0_);
    emits_since_reduce_ = 0;
}

// Resets the float shadow from the exact state. mpz_get_d truncates, so the
// shadow starts at or slightly below the exact value and between resets only
// gains rounding error far below the border guard.
void StreamEncoder::recalibrate() {
    long ea, eb, ed;
    double ma = mpz_get_d_2exp(&ea, a_.get_mpz_t());
    double mb = mpz_get_d_2exp(&eb, b_.get_mpz_t());
    double md = mpz_get_d_2exp(&ed, d_.get_mpz_t());
    low_f_ = std::ldexp(ma / md, static_cast<int>(ea - ed)) ;
    width_f_ = std::ldexp(mb / md, static_cast<int>(eb - ed));
}

// True when the float shadow places the interval across a partition border
// with room to spare, in which case no symbol can be emitted and the exact
// scan (and with it folding the pending bits) can be skipped. The shadow
// must put the lower end certainly inside one cell and the upper end
// certainly past that cell's top; anything within the guard band falls
// through to the exact scan.
bool StreamEncoder::surely_straddles() const {
    const auto& rem = model_.remaining_counts();
    const double np = model_.remaining_total();
    const double hi = (low_f_ + width_f_) * np;
    if (sgn(a_) == 0 && pend_val_ == 0) {
        // The lower end is exactly 0, so only the first nonempty cell counts.
        for (std::uint32_t c : rem)
            if (c) return hi > static_cast<double>(c) + kBorderGuard;
        return false;
    }
    const double lo = low_f_ * np;
    double cum = 0.0;
    for (std::size_t a = 0; a + 1 < rem.size(); ++a) {
        const double next = cum + rem[a];
        if (lo < next)
            return lo > cum + kBorderGuard && lo < next - kBorderGuard &&
                   hi > next + kBorderGuard;
        cum = next;
    }
    return false; // last cell: its top border is 1, nothing to straddle
}

void StreamEncoder::materialize_pending() {
    if (pend_bits_ == 0) return;
    mpz_mul_2exp(a_.get_mpz_t(), a_.get_mpz_t(), pend_bits_);
    if (pend_val_) mpz_addmul_ui(a_.get_mpz_t(), b_.get_mpz_t(), pend_val_);
    mpz_mul_2exp(d_.get_mpz_t(), d_.get_mpz_t(), pend_bits_);
    pend_bits_ = 0;
    pend_val_ = 0;
}

void StreamEncoder::push_bit(Bit b) {
    assert(!finished_);
    if (bits_consumed_ == params_.m)
        throw LengthMismatch("input block must have exactly m bits");
    // Halve the input interval: A <- 2A + bB, D <- 2D. The bit is only
    // buffered here; the big-number work waits until the float shadow says
    // some partition cell could contain the interval.
    if (pend_bits_ == kMaxPendingBits) {
        materialize_pending();
        recalibrate();
    }
    pend_val_ = (pend_val_ << 1) | (b ? 1ul : 0ul);
    ++pend_bits_;
    ++bits_consumed_;
    width_f_ *= 0.5;
    if (b) low_f_ += width_f_;
    if (model_.remaining_total() == 0 || surely_straddles()) return;
    materialize_pending();
    emit_sure_symbols();
}

void StreamEncoder::emit_sure_symbols() {
    // Emit while the input interval [A/D, (A+B)/D) lies entirely inside the
    // subinterval of one symbol; the partition border numerators over D are
    // cumulative-count multiples of D scaled by the remaining total n'.
    // Each round starts with the float shadow so that a certain straddle
    // costs no big-number work.
    while (model_.remaining_total() > 0) {
        recalibrate();
        if (surely_straddles()) break;
        const unsigned long np = model_.remaining_total();
        const auto& rem = model_.remaining_counts();
        mpz_mul_ui(t0_.get_mpz_t(), a_.get_mpz_t(), np); // A n'
        mpz_mul_ui(t4_.get_mpz_t(), b_.get_mpz_t(), np); // B n', the B after an emission
        mpz_add(t1_.get_mpz_t(), t0_.get_mpz_t(), t4_.get_mpz_t()); // (A+B) n'
        mpz_set_ui(t2_.get_mpz_t(), 0);                  // C D, C = counts below a

        bool emitted = false;
        unsigned long cum = 0;
        for (Symbol a = 0; a < rem.size(); ++a) {
            if (rem[a] == 0) continue;
            cum += rem[a];
            mpz_mul_ui(t3_.get_mpz_t(), d_.get_mpz_t(), cum); // (C+c) D
            if (mpz_cmp(t0_.get_mpz_t(), t3_.get_mpz_t()) < 0) {
                // Subinterval of a contains the lower border. Containment
                // additionally needs the upper border inside it.
                if (mpz_cmp(t1_.get_mpz_t(), t3_.get_mpz_t()) <= 0) {
                    mpz_sub(a_.get_mpz_t(), t0_.get_mpz_t(), t2_.get_mpz_t());
                    mpz_swap(b_.get_mpz_t(), t4_.get_mpz_t());
                    mpz_mul_ui(d_.get_mpz_t(), d_.get_mpz_t(), rem[a]);
                    out_.push_back(a);
                    model_.draw(a);
                    emitted = true;
                    if (++emits_since_reduce_ >= kReducePeriodEnc) reduce_state();
                }
                break;
            }
            mpz_swap(t2_.get_mpz_t(), t3_.get_mpz_t());
        }
        if (!emitted) break;
    }
}

IntervalState StreamEncoder::state() const {
    BigInt areal, dreal;
    mpz_mul_2exp(areal.get_mpz_t(), a_.get_mpz_t(), pend_bits_);
    if (pend_val_) mpz_addmul_ui(areal.get_mpz_t(), b_.get_mpz_t(), pend_val_);
    mpz_mul_2exp(dreal.get_mpz_t(), d_.get_mpz_t(), pend_bits_);
    Rational low(areal, dreal);
    low.canonicalize();
    Rational width(b_, dreal);
    width.canonicalize();
    return IntervalState{std::move(low), std::move(width)};
}

SymbolSeq StreamEncoder::finish() {
    assert(!finished_);
    if (bits_consumed_ != params_.m)
        throw LengthMismatch("input block must have exactly m bits");
    materialize_pending();

    // Descend through the subintervals containing the lower border L.
    while (model_.remaining_total() > 0) {
        const unsigned long np = model_.remaining_total();
        const auto& rem = model_.remaining_counts();
        mpz_mul_ui(t0_.get_mpz_t(), a_.get_mpz_t(), np); // A n'
        mpz_set_ui(t2_.get_mpz_t(), 0);                  // C D

        bool placed = false;
        for (Symbol a = 0; a < rem.size() && !placed; ++a) {
            if (rem[a] == 0) continue;
            mpz_set(t3_.get_mpz_t(), t2_.get_mpz_t());
            mpz_addmul_ui(t3_.get_mpz_t(), d_.get_mpz_t(), rem[a]);
            if (mpz_cmp(t0_.get_mpz_t(), t3_.get_mpz_t()) < 0) {
                mpz_sub(a_.get_mpz_t(), t0_.get_mpz_t(), t2_.get_mpz_t());
                mpz_mul_ui(b_.get_mpz_t(), b_.get_mpz_t(), np);
                mpz_mul_ui(d_.get_mpz_t(), d_.get_mpz_t(), rem[a]);
                out_.push_back(a);
                model_.draw(a);
                placed = true;
            } else {
                mpz_swap(t2_.get_mpz_t(), t3_.get_mpz_t());
            }
        }
        assert(placed); // L < 1, so some subinterval always contains it
        if (++emits_since_reduce_ >= kReducePeriodEnc) reduce_state();
    }

    // The reached codeword starts at or below L. Strictly below means its
    // border is outside the half-open input interval, so the matching
    // codeword is the lexicographic successor (which exists: L never
    // exceeds the last border).
    if (sgn(a_) != 0)
        std::next_permutation(out_.begin(), out_.end());
    finished_ = true;
    return out_;
}

StreamDecoder::StreamDecoder(CodeParams params, bool strict)
    : params_(std::move(params)), model_(params_.composition),
      a_(0), b_(1), d_(1), strict_(strict) {}

void StreamDecoder::reduce_state() {
    reduce_triple(a_, b_, d_, t0_);
    pushes_since_reduce_ = 0;
}

void StreamDecoder::push_symbol(Symbol a) {
    assert(!finished_);
    if (model_.remaining_total() == 0)
        throw CompositionMismatch("sequence longer than the blocklength");
    const auto& rem = model_.remaining_counts();
    if (a >= rem.size() || rem[a] == 0)
        throw CompositionMismatch("sequence counts differ from composition");

    const unsigned long np = model_.remaining_total();
    unsigned long below = 0; // C: counts of symbols smaller than a
    for (Symbol s = 0; s < a; ++s) below += rem[s];

    // Refine into subinterval a: A <- A n' + C B, B <- B c, D <- D n'.
    mpz_mul_ui(a_.get_mpz_t(), a_.get_mpz_t(), np);
    if (below) mpz_addmul_ui(a_.get_mpz_t(), b_.get_mpz_t(), below);
    mpz_mul_ui(b_.get_mpz_t(), b_.get_mpz_t(), rem[a]);
    mpz_mul_ui(d_.get_mpz_t(), d_.get_mpz_t(), np);

    model_.draw(a);
    ++symbols_consumed_;
    recalibrate();
    emit_sure_bits();
    if (++pushes_since_reduce_ >= kReducePeriodDec) reduce_state();
}

// Resets the float shadow from the exact state; between resets it only
// drifts by rounding, far below the gate slack.
void StreamDecoder::recalibrate() {
    long ea, eb, ed;
    const double ma = mpz_get_d_2exp(&ea, a_.get_mpz_t());
    const double mb = mpz_get_d_2exp(&eb, b_.get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, d_.get_mpz_t());
    low_f_ = std::ldexp(ma / md, static_cast<int>(ea - ed));
    width_f_ = std::ldexp(mb / md, static_cast<int>(eb - ed));
}

void StreamDecoder::emit_sure_bits() {
    // A bit is sure when the interval fits in one half of [0,1):
    // lower half iff 2(A+B) <= D, upper half iff 2A >= D. The float shadow
    // rules the common case out first: when the interval certainly
    // straddles 1/2, the round ends with no big-number comparison.
    unsigned since_recal = 0;
    while (out_.size() < params_.m) {
        if (++since_recal == 16) {
            // Rescaling around 1/2 cancels; refresh before drift can matter.
            recalibrate();
            since_recal = 0;
        }
        if (low_f_ < 0.5 - kGateSlack && low_f_ + width_f_ > 0.5 + kGateSlack)
            break;

        mpz_add(t0_.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
        mpz_mul_2exp(t0_.get_mpz_t(), t0_.get_mpz_t(), 1);
        if (mpz_cmp(t0_.get_mpz_t(), d_.get_mpz_t()) <= 0) {
            mpz_mul_2exp(a_.get_mpz_t(), a_.get_mpz_t(), 1);
            mpz_mul_2exp(b_.get_mpz_t(), b_.get_mpz_t(), 1);
            out_.push_back(0);
            low_f_ *= 2.0;
            width_f_ *= 2.0;
            continue;
        }
        mpz_mul_2exp(t1_.get_mpz_t(), a_.get_mpz_t(), 1);
        if (mpz_cmp(t1_.get_mpz_t(), d_.get_mpz_t()) >= 0) {
            mpz_sub(a_.get_mpz_t(), t1_.get_mpz_t(), d_.get_mpz_t());
            mpz_mul_2exp(b_.get_mpz_t(), b_.get_mpz_t(), 1);
            out_.push_back(1);
            all_bits_zero_ = false;
            low_f_ = 2.0 * low_f_ - 1.0;
            width_f_ *= 2.0;
            continue;
        }
        break;
    }
}

IntervalState StreamDecoder::state() const {
    Rational low(a_, d_);
    low.canonicalize();
    Rational width(b_, d_);
    width.canonicalize();
    return IntervalState{std::move(low), std::move(width)};
}

BitSeq StreamDecoder::finish() {
    assert(!finished_);
    if (model_.remaining_total() != 0)
        throw CompositionMismatch("sequence shorter than the blocklength");

    const unsigned r = params_.m - static_cast<unsigned>(out_.size());
    // Remaining bits of the input cell index: floor(A 2^r / D).
    mpz_mul_2exp(t0_.get_mpz_t(), a_.get_mpz_t(), r);
    mpz_fdiv_q(t0_.get_mpz_t(), t0_.get_mpz_t(), d_.get_mpz_t());

    if (strict_) {
        // The sequence is a codeword iff it is the first of the class or its
        // predecessor border (A - B)/D falls into a different input cell.
        // A negative predecessor is below the current frame, hence already
        // in a smaller cell through one of the emitted bits.
        bool first_of_class = all_bits_zero_ && sgn(a_) == 0;
        if (!first_of_class) {
            mpz_sub(t1_.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
            if (sgn(t1_) >= 0) {
                mpz_mul_2exp(t1_.get_mpz_t(), t1_.get_mpz_t(), r);
                mpz_fdiv_q(t1_.get_mpz_t(), t1_.get_mpz_t(), d_.get_mpz_t());
                if (mpz_cmp(t0_.get_mpz_t(), t1_.get_mpz_t()) == 0)
                    throw NotACodeword(
                        "sequence is in the type class but not in the codebook");
            }
        }
    }

    BitSeq tail(r, 0);
    for (unsigned pos = 0; pos < r; ++pos)
        tail[r - 1 - pos] = mpz_tstbit(t0_.get_mpz_t(), pos) ? 1 : 0;
    out_.insert(out_.end(), tail.begin(), tail.end());
    finished_ = true;
    return out_;
}

SymbolSeq encode_stream(const BitSeq& bits, const CodeParams& params) {
    if (bits.size() != params.m)
        throw LengthMismatch("input block must have exactly m bits");
    StreamEncoder enc(params);
    for (Bit b : bits) enc.push_bit(b);
    return enc.finish();
}

BitSeq decode_stream(const SymbolSeq& seq, const CodeParams& params, bool strict) {
    if (seq.size() != params.n())
        throw CompositionMismatch("sequence length differs from blocklength");
    StreamDecoder dec(params, strict);
    for (Symbol s : seq) dec.push_symbol(s);
    return dec.finish();
}

} // namespace ccdm
