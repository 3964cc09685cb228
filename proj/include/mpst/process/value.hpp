#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mpst/core/sort.hpp"

namespace mpst {

// Nat ranges over [0, 2^63 - 1] so that it shares the signed 8-byte wire
// encoding with Int.
inline constexpr std::uint64_t kNatMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

class Value {
 public:
  enum class Kind : std::uint8_t { Nat, Int, Bool, Unit, Pair, Sum, Seq };

  Value() : kind_(Kind::Unit) {}
  static Value nat(std::uint64_t n);
  static Value integer(std::int64_t n);
  static Value boolean(bool b);
  static Value unit() { return Value(); }
  static Value pair(Value a, Value b);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value seq(std::vector<Value> items);

  Kind kind() const { return kind_; }
  std::uint64_t as_nat() const { return bits_; }
  std::int64_t as_int() const { return static_cast<std::int64_t>(bits_); }
  bool as_bool() const { return bits_ != 0; }
  const Value& first() const { return items_.at(0); }
  const Value& second() const { return items_.at(1); }
  bool is_right() const { return bits_ != 0; }
  const Value& payload() const { return items_.at(0); }
  const std::vector<Value>& items() const { return items_; }

  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  explicit Value(Kind k) : kind_(k) {}
  Kind kind_;
  std::uint64_t bits_ = 0;
  std::vector<Value> items_;
};

bool inhabits(const Value& v, const Sort& s);

// Finite value domains used when quantifying over received payloads.
struct ValueUniverse {
  std::vector<std::uint64_t> nats{0, 1, 2};
  std::vector<std::int64_t> ints{0, 1, 2};
  std::size_t max_seq_len = 1;
  std::vector<Value> values_of(const Sort& s) const;
};

}  // namespace mpst
