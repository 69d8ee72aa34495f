#include "ccdm/ranker.hpp"

#include <algorithm>
#include <cassert>

namespace ccdm {

namespace {

// Verifies seq has exactly the counts of comp (and only symbols < k).
void check_composition(const SymbolSeq& seq, const Composition& comp) {
    std::vector<std::uint32_t> seen(comp.size(), 0);
    for (Symbol s : seq) {
        if (s >= comp.size())
            throw CompositionMismatch("symbol out of alphabet range");
        ++seen[s];
    }
    if (seq.size() != comp.n() || seen != comp.counts())
        throw CompositionMismatch("sequence counts differ from composition");
}

} // namespace

/*
 * Multiset-permutation ranking. Walking the sequence left to right with
 * `size` = number of completions of the current remaining counts and
 * n' = remaining length, every sequence that starts with a smaller symbol b
 * at this position contributes size * count_b / n' sequences below seq.
 * All contributions are integers, so both accumulators can be kept scaled
 * by a running product q of the pending divisors n' and flushed with one
 * exact division whenever q approaches the word size: a single-word exact
 * division costs several times a single-word multiply.
 */
BigInt rank(const SymbolSeq& seq, const Composition& comp) {
    check_composition(seq, comp);

    std::vector<std::uint32_t> remaining = comp.counts();
    BigInt size = type_class_size(comp); // scaled: size * q
    BigInt result = 0;                   // scaled: result * q
    unsigned long nprime = comp.n();
    unsigned long q = 1;
    constexpr unsigned long kQLimit = std::numeric_limits<unsigned long>::max();

    for (Symbol s : seq) {
        if (q > kQLimit / nprime) {
            mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), q);
            mpz_divexact_ui(size.get_mpz_t(), size.get_mpz_t(), q);
            q = 1;
        }
        unsigned long below_count = 0;
        for (Symbol b = 0; b < s; ++b) below_count += remaining[b];
        mpz_mul_ui(result.get_mpz_t(), result.get_mpz_t(), nprime);
        if (below_count)
            mpz_addmul_ui(result.get_mpz_t(), size.get_mpz_t(), below_count);
        mpz_mul_ui(size.get_mpz_t(), size.get_mpz_t(), remaining[s]);
        q *= nprime;
        --remaining[s];
        --nprime;
    }
    if (q > 1)
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), q);
    return result;
}

SymbolSeq unrank(const BigInt& i, const Composition& comp) {
    BigInt size = type_class_size(comp);
    if (sgn(i) < 0 || i >= size)
        throw IndexOutOfRange("type-class index outside [0, |T|)");

    std::vector<std::uint32_t> remaining = comp.counts();
    SymbolSeq out;
    out.reserve(comp.n());
    BigInt rest = i;  // scaled: rest * q
    BigInt scaled, border, prev;
    unsigned long nprime = comp.n();
    unsigned long q = 1;
    constexpr unsigned long kQLimit = std::numeric_limits<unsigned long>::max();

    // Cell of symbol a spans [size C_a / n', size C_{a+1} / n') with C the
    // cumulative remaining counts. Comparing rest * n' against size * C
    // needs no division, and both running values stay scaled by the product
    // q of pending divisors n', flushed with one exact division per word.
    while (nprime > 0) {
        if (q > kQLimit / nprime) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
            mpz_divexact_ui(size.get_mpz_t(), size.get_mpz_t(), q);
            q = 1;
        }
        bool placed = false;
        unsigned long cum = 0;
        mpz_mul_ui(scaled.get_mpz_t(), rest.get_mpz_t(), nprime); // rest n'
        mpz_set_ui(prev.get_mpz_t(), 0);
        for (Symbol a = 0; a < comp.size() && !placed; ++a) {
            if (remaining[a] == 0) continue;
            cum += remaining[a];
            mpz_mul_ui(border.get_mpz_t(), size.get_mpz_t(), cum);
            if (mpz_cmp(scaled.get_mpz_t(), border.get_mpz_t()) < 0) {
                mpz_sub(rest.get_mpz_t(), scaled.get_mpz_t(), prev.get_mpz_t());
                mpz_mul_ui(size.get_mpz_t(), size.get_mpz_t(), remaining[a]);
                out.push_back(a);
                --remaining[a];
                placed = true;
            } else {
                mpz_swap(prev.get_mpz_t(), border.get_mpz_t());
            }
        }
        assert(placed); // rest < size is a loop invariant
        q *= nprime;
        --nprime;
    }
    return out;
}

BigInt bits_to_index(const BitSeq& bits) {
    // Pack big-endian into bytes (low-padded), import once, shift the pad off.
    const std::size_t pad = (8 - bits.size() % 8) % 8;
    std::vector<unsigned char> bytes((bits.size() + pad) / 8, 0);
    for (std::size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) bytes[t / 8] |= static_cast<unsigned char>(0x80u >> (t % 8));
    BigInt j = 0;
    if (!bytes.empty())
        mpz_import(j.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
    mpz_fdiv_q_2exp(j.get_mpz_t(), j.get_mpz_t(), pad);
    return j;
}

BitSeq index_to_bits(const BigInt& j, unsigned m) {
    BitSeq bits(m, 0);
    for (unsigned pos = 0; pos < m; ++pos)
        bits[m - 1 - pos] = mpz_tstbit(j.get_mpz_t(), pos) ? 1 : 0;
    return bits;
}

SymbolSeq ref_encode(const BitSeq& bits, const CodeParams& params) {
    if (bits.size() != params.m)
        throw LengthMismatch("input block must have exactly m bits");
    BigInt j = bits_to_index(bits);
    // Lowest codeword border i/|T| at or above j 2^-m: i = ceil(j |T| / 2^m).
    BigInt i = j * params.type_class_size;
    mpz_cdiv_q_2exp(i.get_mpz_t(), i.get_mpz_t(), params.m);
    return unrank(i, params.composition);
}

BitSeq ref_decode(const SymbolSeq& seq, const CodeParams& params, bool strict) {
    BigInt i = rank(seq, params.composition);
    // The input cell containing the codeword border: j = floor(i 2^m / |T|).
    BigInt j = i << params.m;
    mpz_fdiv_q(j.get_mpz_t(), j.get_mpz_t(), params.type_class_size.get_mpz_t());
    if (strict) {
        BigInt expect = j * params.type_class_size;
        mpz_cdiv_q_2exp(expect.get_mpz_t(), expect.get_mpz_t(), params.m);
        if (expect != i)
            throw NotACodeword("sequence is in the type class but not in the codebook");
    }
    return index_to_bits(j, params.m);
}

std::vector<SymbolSeq> codebook(const CodeParams& params, unsigned max_m) {
    if (params.m > max_m)
        throw TooLarge("codebook enumeration limit exceeded");
    std::vector<SymbolSeq> book;
    book.reserve(std::size_t{1} << params.m);
    BitSeq bits(params.m, 0);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << params.m); ++j) {
        for (unsigned pos = 0; pos < params.m; ++pos)
            bits[params.m - 1 - pos] = (j >> pos) & 1;
        book.push_back(ref_encode(bits, params));
    }
    return book;
}

} // namespace ccdm
