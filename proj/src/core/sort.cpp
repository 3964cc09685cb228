#include "mpst/core/sort.hpp"

namespace mpst {

Sort Sort::sum(Sort l, Sort r) {
  Sort s(Kind::Sum);
  s.args_ = {std::move(l), std::move(r)};
  return s;
}

Sort Sort::pair(Sort l, Sort r) {
  Sort s(Kind::Pair);
  s.args_ = {std::move(l), std::move(r)};
  return s;
}

Sort Sort::seq(Sort elem) {
  Sort s(Kind::Seq);
  s.args_ = {std::move(elem)};
  return s;
}

std::string Sort::to_string() const {
  switch (kind_) {
    case Kind::Nat: return "nat";
    case Kind::Int: return "int";
    case Kind::Bool: return "bool";
    case Kind::Unit: return "unit";
    case Kind::Sum: return "sum(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::Pair: return "pair(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::Seq: return "seq(" + elem().to_string() + ")";
  }
  return "?";
}

bool operator==(const Sort& a, const Sort& b) {
  return a.kind_ == b.kind_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Sort& a, const Sort& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  for (std::size_t i = 0; i < a.args_.size(); ++i) {
    auto c = a.args_[i] <=> b.args_[i];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace mpst
