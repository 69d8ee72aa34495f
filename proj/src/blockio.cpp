#include "ccdm/blockio.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "ccdm/errors.hpp"

namespace ccdm {

namespace {

// Parses "key=<uint>" tokens from a header line in a fixed order.
std::vector<std::uint64_t> parse_header(std::istream& in,
                                        const std::vector<std::string>& keys) {
    std::string line;
    if (!std::getline(in, line)) {
        if (in.bad()) throw IoFailure("reading header failed");
        throw FormatError("missing header line");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream tokens(line);
    std::vector<std::uint64_t> values;
    for (const auto& key : keys) {
        std::string token;
        if (!(tokens >> token) || token.rfind(key + "=", 0) != 0)
            throw FormatError("header must be '" + key + "=<int> ...'");
        std::string digits = token.substr(key.size() + 1);
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
            throw FormatError("bad integer in header field '" + key + "'");
        try {
            values.push_back(std::stoull(digits));
        } catch (const std::exception&) {
            throw FormatError("bad integer in header field '" + key + "'");
        }
    }
    std::string extra;
    if (tokens >> extra) throw FormatError("trailing tokens in header");
    return values;
}

std::vector<char> read_payload(std::istream& in, std::size_t expected) {
    std::vector<char> payload(expected);
    in.read(payload.data(), static_cast<std::streamsize>(expected));
    if (static_cast<std::size_t>(in.gcount()) != expected) {
        if (in.bad()) throw IoFailure("reading payload failed");
        throw FormatError("payload shorter than the header promises");
    }
    char extra;
    if (in.read(&extra, 1))
        throw FormatError("payload longer than the header promises");
    if (in.bad()) throw IoFailure("reading payload failed");
    return payload;
}

constexpr std::uint64_t kMaxBlocks = 1u << 24;
constexpr std::uint64_t kMaxLength = 1u << 24;

} // namespace

BitBlockFile read_bit_blocks(std::istream& in) {
    auto header = parse_header(in, {"m", "blocks"});
    if (header[0] > kMaxLength || header[1] > kMaxBlocks)
        throw FormatError("header dimensions too large");
    BitBlockFile file;
    file.m = static_cast<std::uint32_t>(header[0]);
    const auto blocks = static_cast<std::size_t>(header[1]);

    const std::size_t stride = (file.m + 7) / 8;
    auto payload = read_payload(in, stride * blocks);

    file.blocks.reserve(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        const auto* base =
            reinterpret_cast<const unsigned char*>(payload.data()) + i * stride;
        BitSeq bits(file.m);
        for (std::uint32_t pos = 0; pos < file.m; ++pos)
            bits[pos] = (base[pos / 8] >> (7 - pos % 8)) & 1;
        // Padding up to the byte boundary must be zero.
        for (std::uint32_t pos = file.m; pos < stride * 8; ++pos)
            if ((base[pos / 8] >> (7 - pos % 8)) & 1)
                throw FormatError("nonzero padding bits");
        file.blocks.push_back(std::move(bits));
    }
    return file;
}

void write_bit_blocks(std::ostream& out, const BitBlockFile& file) {
    out << "m=" << file.m << " blocks=" << file.blocks.size() << "\n";
    const std::size_t stride = (file.m + 7) / 8;
    std::vector<char> packed(stride);
    for (const auto& bits : file.blocks) {
        if (bits.size() != file.m)
            throw LengthMismatch("block length differs from header m");
        std::fill(packed.begin(), packed.end(), 0);
        for (std::uint32_t pos = 0; pos < file.m; ++pos)
            if (bits[pos]) packed[pos / 8] |= static_cast<char>(1 << (7 - pos % 8));
        out.write(packed.data(), static_cast<std::streamsize>(stride));
    }
    if (!out) throw IoFailure("writing bit blocks failed");
}

SymbolBlockFile read_symbol_blocks(std::istream& in) {
    auto header = parse_header(in, {"n", "k", "blocks"});
    if (header[0] > kMaxLength || header[2] > kMaxBlocks)
        throw FormatError("header dimensions too large");
    if (header[1] < 1 || header[1] > 255)
        throw FormatError("alphabet size must be in [1, 255]");
    SymbolBlockFile file;
    file.n = static_cast<std::uint32_t>(header[0]);
    file.k = static_cast<std::uint32_t>(header[1]);
    const auto blocks = static_cast<std::size_t>(header[2]);

    auto payload = read_payload(in, static_cast<std::size_t>(file.n) * blocks);

    file.blocks.reserve(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        const auto* base =
            reinterpret_cast<const unsigned char*>(payload.data()) + i * file.n;
        SymbolSeq seq(file.n);
        for (std::uint32_t pos = 0; pos < file.n; ++pos) {
            if (base[pos] >= file.k)
                throw FormatError("symbol byte outside the alphabet");
            seq[pos] = base[pos];
        }
        file.blocks.push_back(std::move(seq));
    }
    return file;
}

void write_symbol_blocks(std::ostream& out, const SymbolBlockFile& file) {
    if (file.k < 1 || file.k > 255)
        throw FormatError("alphabet size must be in [1, 255]");
    out << "n=" << file.n << " k=" << file.k << " blocks=" << file.blocks.size()
        << "\n";
    std::vector<char> bytes(file.n);
    for (const auto& seq : file.blocks) {
        if (seq.size() != file.n)
            throw LengthMismatch("block length differs from header n");
        for (std::uint32_t pos = 0; pos < file.n; ++pos) {
            if (seq[pos] >= file.k)
                throw FormatError("symbol outside the alphabet");
            bytes[pos] = static_cast<char>(seq[pos]);
        }
        out.write(bytes.data(), static_cast<std::streamsize>(file.n));
    }
    if (!out) throw IoFailure("writing symbol blocks failed");
}

} // namespace ccdm
