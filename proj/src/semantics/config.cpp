#include "mpst/semantics/config.hpp"

#include "mpst/core/ops.hpp"

namespace mpst {

struct GlobalConfig::Node {
  enum class Tag : std::uint8_t { Type, Msg, MsgSent } tag = Tag::Type;
  GlobalType type;
  Role from, to;
  std::size_t chosen = 0;
  Branches branches;
  std::size_t hash = 0;
};

GlobalConfig::GlobalConfig() : GlobalConfig(of(GlobalType::end())) {}

GlobalConfig GlobalConfig::of(GlobalType g) {
  auto n = std::make_shared<Node>();
  n->hash = g.hash();
  n->type = std::move(g);
  return GlobalConfig(std::move(n));
}

namespace {
std::size_t hash_cfg_branches(std::size_t h, const GlobalConfig::Branches& bs) {
  for (const auto& b : bs) {
    h = detail::mix(h, detail::hash_str(b.label.name));
    h = detail::mix(h, detail::hash_sort(b.sort));
    h = detail::mix(h, b.cont.hash());
  }
  return h;
}
}  // namespace

GlobalConfig GlobalConfig::msg(Role from, Role to, Branches branches) {
  bool all_plain = true;
  for (const auto& b : branches) all_plain = all_plain && b.cont.is_type();
  if (all_plain) {
    GlobalType::Branches gbs;
    gbs.reserve(branches.size());
    for (auto& b : branches) gbs.push_back({b.label, b.sort, b.cont.type()});
    return of(GlobalType::msg(std::move(from), std::move(to), std::move(gbs)));
  }
  auto n = std::make_shared<Node>();
  n->tag = Node::Tag::Msg;
  std::size_t h = detail::mix(0x3a9, detail::hash_str(from.name));
  h = detail::mix(h, detail::hash_str(to.name));
  n->hash = hash_cfg_branches(h, branches);
  n->from = std::move(from);
  n->to = std::move(to);
  n->branches = std::move(branches);
  return GlobalConfig(std::move(n));
}

GlobalConfig GlobalConfig::msg_sent(Role from, Role to, std::size_t chosen, Branches branches) {
  auto n = std::make_shared<Node>();
  n->tag = Node::Tag::MsgSent;
  std::size_t h = detail::mix(0x5e47, detail::hash_str(from.name));
  h = detail::mix(h, detail::hash_str(to.name));
  h = detail::mix(h, chosen);
  n->hash = hash_cfg_branches(h, branches);
  n->from = std::move(from);
  n->to = std::move(to);
  n->chosen = chosen;
  n->branches = std::move(branches);
  return GlobalConfig(std::move(n));
}

GlobalConfig::Kind GlobalConfig::kind() const {
  switch (n_->tag) {
    case Node::Tag::Msg: return Kind::Msg;
    case Node::Tag::MsgSent: return Kind::MsgSent;
    case Node::Tag::Type: break;
  }
  switch (n_->type.kind()) {
    case GlobalType::Kind::End: return Kind::End;
    case GlobalType::Kind::Var: return Kind::Var;
    case GlobalType::Kind::Rec: return Kind::Rec;
    case GlobalType::Kind::Msg: return Kind::Msg;
  }
  return Kind::End;
}

bool GlobalConfig::is_type() const { return n_->tag == Node::Tag::Type; }
const GlobalType& GlobalConfig::type() const { return n_->type; }
const Role& GlobalConfig::from() const { return n_->from; }
const Role& GlobalConfig::to() const { return n_->to; }
std::size_t GlobalConfig::chosen() const { return n_->chosen; }
const GlobalConfig::Branches& GlobalConfig::branches() const { return n_->branches; }
std::size_t GlobalConfig::hash() const { return n_->hash; }

bool operator==(const GlobalConfig& a, const GlobalConfig& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->hash != b.n_->hash || a.n_->tag != b.n_->tag) return false;
  if (a.is_type()) return a.type() == b.type();
  if (a.from() != b.from() || a.to() != b.to() || a.chosen() != b.chosen()) return false;
  const auto& x = a.branches();
  const auto& y = b.branches();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].label != y[i].label || x[i].sort != y[i].sort || !(x[i].cont == y[i].cont)) return false;
  return true;
}

std::strong_ordering operator<=>(const GlobalConfig& a, const GlobalConfig& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.n_->tag <=> b.n_->tag; c != 0) return c;
  if (a.is_type()) return a.type() <=> b.type();
  if (auto c = a.from() <=> b.from(); c != 0) return c;
  if (auto c = a.to() <=> b.to(); c != 0) return c;
  if (auto c = a.chosen() <=> b.chosen(); c != 0) return c;
  const auto& x = a.branches();
  const auto& y = b.branches();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (auto c = x[i].label <=> y[i].label; c != 0) return c;
    if (auto c = x[i].sort <=> y[i].sort; c != 0) return c;
    if (auto c = x[i].cont <=> y[i].cont; c != 0) return c;
  }
  return x.size() <=> y.size();
}

GlobalConfig initial_config(const GlobalType& g) { return GlobalConfig::of(g); }

std::set<Role> participants(const GlobalConfig& c) {
  if (c.is_type()) return participants(c.type());
  std::set<Role> out{c.from(), c.to()};
  for (const auto& b : c.branches()) {
    auto sub = participants(b.cont);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

GlobalType erase_markers(const GlobalConfig& c) {
  if (c.is_type()) return c.type();
  GlobalType::Branches bs;
  for (const auto& b : c.branches()) bs.push_back({b.label, b.sort, erase_markers(b.cont)});
  return GlobalType::msg(c.from(), c.to(), std::move(bs));
}

bool is_terminated(const GlobalConfig& c, std::size_t fuel) {
  if (!c.is_type()) return false;
  GlobalType g = c.type();
  return unfold_head(g, fuel) && g.kind() == GlobalType::Kind::End;
}

}  // namespace mpst
