#include "rojet/bitio.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rojet {

BitFileFormat parse_bit_format(std::string_view name) {
    if (name == "ascii01") return BitFileFormat::ascii01;
    if (name == "packed") return BitFileFormat::packed;
    if (name == "byteper") return BitFileFormat::byteper;
    throw std::invalid_argument("unknown bit file format '" + std::string(name) +
                                "' (expected ascii01, packed or byteper)");
}

std::string to_string(BitFileFormat fmt) {
    switch (fmt) {
        case BitFileFormat::ascii01: return "ascii01";
        case BitFileFormat::packed: return "packed";
        case BitFileFormat::byteper: return "byteper";
    }
    return "?";
}

void write_bits(std::ostream& os, const BitStream& bits, BitFileFormat fmt) {
    switch (fmt) {
        case BitFileFormat::ascii01:
            for (auto b : bits.bits) os.put(b ? '1' : '0');
            break;
        case BitFileFormat::packed: {
            std::uint8_t acc = 0;
            int used = 0;
            for (auto b : bits.bits) {
                acc |= static_cast<std::uint8_t>(b << used);
                if (++used == 8) {
                    os.put(static_cast<char>(acc));
                    acc = 0;
                    used = 0;
                }
            }
            if (used > 0) os.put(static_cast<char>(acc));  // trailing bits zero-padded
            break;
        }
        case BitFileFormat::byteper:
            for (auto b : bits.bits) os.put(static_cast<char>(b));
            break;
    }
    if (!os) throw std::runtime_error("bit stream write failed");
}

BitStream read_bits(std::istream& is, BitFileFormat fmt, std::optional<std::uint64_t> nbits) {
    BitStream bs;
    char c;
    switch (fmt) {
        case BitFileFormat::ascii01:
            while (is.get(c)) {
                if (std::isspace(static_cast<unsigned char>(c))) continue;
                if (c == '0')
                    bs.bits.push_back(0);
                else if (c == '1')
                    bs.bits.push_back(1);
                else
                    throw std::invalid_argument(std::string("invalid character '") + c +
                                                "' in ascii01 stream");
            }
            break;
        case BitFileFormat::packed:
            while (is.get(c)) {
                const auto byte = static_cast<std::uint8_t>(c);
                for (int i = 0; i < 8; ++i)
                    bs.bits.push_back(static_cast<std::uint8_t>((byte >> i) & 1u));
            }
            break;
        case BitFileFormat::byteper:
            while (is.get(c)) {
                const auto byte = static_cast<std::uint8_t>(c);
                if (byte > 1)
                    throw std::invalid_argument("byteper stream contains byte value " +
                                                std::to_string(byte));
                bs.bits.push_back(byte);
            }
            break;
    }
    if (nbits) {
        if (*nbits > bs.bits.size())
            throw std::invalid_argument("requested " + std::to_string(*nbits) +
                                        " bits but the stream holds only " +
                                        std::to_string(bs.bits.size()));
        bs.bits.resize(*nbits);
    }
    return bs;
}

void write_bits_file(const std::string& path, const BitStream& bits, BitFileFormat fmt) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_bits(os, bits, fmt);
}

BitStream read_bits_file(const std::string& path, BitFileFormat fmt,
                         std::optional<std::uint64_t> nbits) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_bits(is, fmt, nbits);
}

}  // namespace rojet
