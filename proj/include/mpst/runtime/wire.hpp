#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/process/value.hpp"

namespace mpst::runtime {

using Bytes = std::vector<std::uint8_t>;

struct WireError {
  enum class Kind { Malformed, SortMismatch, NegativeNat, Truncated, OversizeFrame };
  Kind kind;
  std::string message;
};

std::string to_string(WireError::Kind k);

// nat/int: 8 bytes big-endian; bool: 1 byte; unit: nothing; pair: left then
// right; sum: tag byte (0 left, 1 right) then payload; seq: 4-byte
// big-endian count then the elements.
Expected<Bytes, WireError> encode_value(const Value& v, const Sort& s);
void encode_value_into(const Value& v, const Sort& s, Bytes& out);  // v must inhabit s
// Decodes exactly the given bytes; trailing bytes are Malformed.
Expected<Value, WireError> decode_value(std::span<const std::uint8_t> bytes, const Sort& s);

inline constexpr std::uint32_t kMaxFrameLength = 16u * 1024u * 1024u;

struct WireMessage {
  std::uint32_t label_id = 0;
  Bytes payload;
  friend bool operator==(const WireMessage&, const WireMessage&) = default;
};

// 4-byte big-endian length of (label id + payload), 4-byte label id, payload.
Expected<Bytes, WireError> frame(const WireMessage& m);

struct Deframed {
  WireMessage message;
  std::size_t consumed = 0;
};
// Reads exactly one frame from the front of `stream`.
Expected<Deframed, WireError> deframe(std::span<const std::uint8_t> stream);

std::uint32_t read_u32(const std::uint8_t* p);
void write_u32(std::uint32_t x, Bytes& out);

}  // namespace mpst::runtime
