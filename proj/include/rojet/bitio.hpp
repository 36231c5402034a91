#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "rojet/params.hpp"

namespace rojet {

// Bit stream interchange formats:
//   ascii01 -- characters '0'/'1', whitespace ignored on read
//   packed  -- 8 bits per byte, LSB is the earliest bit; headerless, so
//              non-multiple-of-8 lengths need the true bit count on read
//   byteper -- one byte per bit, values 0x00/0x01 (the sample format
//              consumed by external entropy-assessment tools)
enum class BitFileFormat { ascii01, packed, byteper };

BitFileFormat parse_bit_format(std::string_view name);
std::string to_string(BitFileFormat fmt);

void write_bits(std::ostream& os, const BitStream& bits, BitFileFormat fmt);

// nbits trims the decoded stream (mandatory knowledge for packed data whose
// length is not a multiple of 8; defaults to everything decoded).
BitStream read_bits(std::istream& is, BitFileFormat fmt,
                    std::optional<std::uint64_t> nbits = {});

void write_bits_file(const std::string& path, const BitStream& bits, BitFileFormat fmt);
BitStream read_bits_file(const std::string& path, BitFileFormat fmt,
                         std::optional<std::uint64_t> nbits = {});

}  // namespace rojet
