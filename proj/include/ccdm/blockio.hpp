#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ccdm/bigint.hpp"

namespace ccdm {

// Bit blocks on disk: an ASCII header line "m=<int> blocks=<int>" followed
// by the packed payload. Each block occupies ceil(m/8) bytes; the first bit
// of a block is the most significant bit of its first byte and the padding
// bits up to the byte boundary are zero.
struct BitBlockFile {
    std::uint32_t m = 0;
    std::vector<BitSeq> blocks;
};

// Symbol blocks on disk: header "n=<int> k=<int> blocks=<int>", then one
// byte per symbol (so k <= 255), blocks concatenated.
struct SymbolBlockFile {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<SymbolSeq> blocks;
};

// Readers throw FormatError on malformed headers, short payloads, nonzero
// padding or out-of-range symbols; IoFailure on stream errors. Writers
// throw IoFailure.
BitBlockFile read_bit_blocks(std::istream& in);
void write_bit_blocks(std::ostream& out, const BitBlockFile& file);

SymbolBlockFile read_symbol_blocks(std::istream& in);
void write_symbol_blocks(std::ostream& out, const SymbolBlockFile& file);

} // namespace ccdm
