#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ccdm {

// Exact unbounded integers and rationals. GMP does the heavy lifting; these
// aliases keep the rest of the library backend-agnostic in spelling only.
using BigInt = mpz_class;
using Rational = mpq_class;

using Symbol = std::uint32_t;
using SymbolSeq = std::vector<Symbol>;

// Bits are materialized as one byte per bit, value 0 or 1.
using Bit = std::uint8_t;
using BitSeq = std::vector<Bit>;

// floor(log2(x)) for x >= 1, exact at any magnitude.
inline unsigned floor_log2(const BigInt& x) {
    assert(sgn(x) > 0);
    return static_cast<unsigned>(mpz_sizeinbase(x.get_mpz_t(), 2)) - 1;
}

// log2(x) in double precision, accurate to ~1 ulp even for huge x.
inline double log2_approx(const BigInt& x) {
    assert(sgn(x) > 0);
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return static_cast<double>(exp2) + std::log2(mant);
}

} // namespace ccdm
