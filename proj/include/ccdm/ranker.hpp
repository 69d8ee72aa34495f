#pragma once

#include <vector>

#include "ccdm/typemath.hpp"

namespace ccdm {

// Reference semantics for the matcher: lexicographic rank/unrank inside a
// type class, plus the closed-form index maps between m-bit inputs and
// codewords. The streaming coder must agree with these exactly.

// Number of sequences in T(comp) lexicographically smaller than seq.
// Symbol order is index order, 0 smallest.
BigInt rank(const SymbolSeq& seq, const Composition& comp);

// Inverse of rank: the i-th sequence of T(comp) in lexicographic order.
SymbolSeq unrank(const BigInt& i, const Composition& comp);

// Big-endian integer value of a bit block (first bit most significant).
BigInt bits_to_index(const BitSeq& bits);

// m-bit big-endian encoding of j. Requires j < 2^m.
BitSeq index_to_bits(const BigInt& j, unsigned m);

// The codeword whose interval [i/|T|, (i+1)/|T|) has the lowest border
// inside the input interval [j 2^-m, (j+1) 2^-m): i = ceil(j |T| / 2^m).
SymbolSeq ref_encode(const BitSeq& bits, const CodeParams& params);

// Inverse map: j = floor(rank(seq) 2^m / |T|). Strict mode rejects
// sequences in T that are not ref_encode outputs.
BitSeq ref_decode(const SymbolSeq& seq, const CodeParams& params, bool strict = true);

// [ref_encode(j) for j = 0 .. 2^m - 1]. Refuses m beyond the limit.
std::vector<SymbolSeq> codebook(const CodeParams& params, unsigned max_m = 20);

} // namespace ccdm
