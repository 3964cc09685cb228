#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mpst {

// Payload sorts. Sum and Pair have two arguments, Seq has one.
class Sort {
 public:
  enum class Kind : std::uint8_t { Nat, Int, Bool, Unit, Sum, Pair, Seq };

  Sort() : kind_(Kind::Unit) {}

  static Sort nat() { return Sort(Kind::Nat); }
  static Sort integer() { return Sort(Kind::Int); }
  static Sort boolean() { return Sort(Kind::Bool); }
  static Sort unit() { return Sort(Kind::Unit); }
  static Sort sum(Sort l, Sort r);
  static Sort pair(Sort l, Sort r);
  static Sort seq(Sort elem);

  Kind kind() const { return kind_; }
  bool is_base() const { return args_.empty(); }
  const Sort& left() const { return args_.at(0); }
  const Sort& right() const { return args_.at(1); }
  const Sort& elem() const { return args_.at(0); }

  // nat, int, bool, unit, sum(a,b), pair(a,b), seq(a)
  std::string to_string() const;

  friend bool operator==(const Sort& a, const Sort& b);
  friend std::strong_ordering operator<=>(const Sort& a, const Sort& b);

 private:
  explicit Sort(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<Sort> args_;
};

}  // namespace mpst
