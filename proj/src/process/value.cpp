#include "mpst/process/value.hpp"

namespace mpst {

Value Value::nat(std::uint64_t n) {
  Value v(Kind::Nat);
  v.bits_ = n;
  return v;
}

Value Value::integer(std::int64_t n) {
  Value v(Kind::Int);
  v.bits_ = static_cast<std::uint64_t>(n);
  return v;
}

Value Value::boolean(bool b) {
  Value v(Kind::Bool);
  v.bits_ = b ? 1 : 0;
  return v;
}

Value Value::pair(Value a, Value b) {
  Value v(Kind::Pair);
  v.items_ = {std::move(a), std::move(b)};
  return v;
}

Value Value::inl(Value x) {
  Value v(Kind::Sum);
  v.items_ = {std::move(x)};
  return v;
}

Value Value::inr(Value x) {
  Value v(Kind::Sum);
  v.bits_ = 1;
  v.items_ = {std::move(x)};
  return v;
}

Value Value::seq(std::vector<Value> items) {
  Value v(Kind::Seq);
  v.items_ = std::move(items);
  return v;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Nat: return std::to_string(as_nat());
    case Kind::Int: return std::to_string(as_int()) + "i";
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Unit: return "tt";
    case Kind::Pair: return "(" + first().to_string() + ", " + second().to_string() + ")";
    case Kind::Sum: return std::string(is_right() ? "inr(" : "inl(") + payload().to_string() + ")";
    case Kind::Seq: {
      std::string s = "[";
      for (std::size_t i = 0; i < items_.size(); ++i) s += (i ? ", " : "") + items_[i].to_string();
      return s + "]";
    }
  }
  return "?";
}

bool operator==(const Value& a, const Value& b) {
  return a.kind_ == b.kind_ && a.bits_ == b.bits_ && a.items_ == b.items_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == Value::Kind::Int) {
    if (auto c = a.as_int() <=> b.as_int(); c != 0) return c;
  } else if (auto c = a.bits_ <=> b.bits_; c != 0) {
    return c;
  }
  for (std::size_t i = 0; i < std::min(a.items_.size(), b.items_.size()); ++i)
    if (auto c = a.items_[i] <=> b.items_[i]; c != 0) return c;
  return a.items_.size() <=> b.items_.size();
}

bool inhabits(const Value& v, const Sort& s) {
  switch (s.kind()) {
    case Sort::Kind::Nat: return v.kind() == Value::Kind::Nat && v.as_nat() <= kNatMax;
    case Sort::Kind::Int: return v.kind() == Value::Kind::Int;
    case Sort::Kind::Bool: return v.kind() == Value::Kind::Bool;
    case Sort::Kind::Unit: return v.kind() == Value::Kind::Unit;
    case Sort::Kind::Pair:
      return v.kind() == Value::Kind::Pair && inhabits(v.first(), s.left()) && inhabits(v.second(), s.right());
    case Sort::Kind::Sum:
      return v.kind() == Value::Kind::Sum && inhabits(v.payload(), v.is_right() ? s.right() : s.left());
    case Sort::Kind::Seq:
      if (v.kind() != Value::Kind::Seq) return false;
      for (const auto& x : v.items())
        if (!inhabits(x, s.elem())) return false;
      return true;
  }
  return false;
}

std::vector<Value> ValueUniverse::values_of(const Sort& s) const {
  std::vector<Value> out;
  switch (s.kind()) {
    case Sort::Kind::Nat:
      for (auto n : nats) out.push_back(Value::nat(n));
      break;
    case Sort::Kind::Int:
      for (auto n : ints) out.push_back(Value::integer(n));
      break;
    case Sort::Kind::Bool:
      out = {Value::boolean(false), Value::boolean(true)};
      break;
    case Sort::Kind::Unit: out = {Value::unit()}; break;
    case Sort::Kind::Pair:
      for (const auto& a : values_of(s.left()))
        for (const auto& b : values_of(s.right())) out.push_back(Value::pair(a, b));
      break;
    case Sort::Kind::Sum:
      for (const auto& a : values_of(s.left())) out.push_back(Value::inl(a));
      for (const auto& b : values_of(s.right())) out.push_back(Value::inr(b));
      break;
    case Sort::Kind::Seq: {
      out.push_back(Value::seq({}));
      std::vector<std::vector<Value>> layer{{}};
      auto elems = values_of(s.elem());
      for (std::size_t len = 1; len <= max_seq_len; ++len) {
        std::vector<std::vector<Value>> next;
        for (const auto& prefix : layer)
          for (const auto& e : elems) {
            auto v = prefix;
            v.push_back(e);
            out.push_back(Value::seq(v));
            next.push_back(std::move(v));
          }
        layer = std::move(next);
      }
      break;
    }
  }
  return out;
}

}  // namespace mpst
