#include "mpst/core/types.hpp"

#include <algorithm>

namespace mpst {

namespace detail {

std::size_t hash_str(const std::string& s) {
  std::size_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::size_t hash_sort(const Sort& s) {
  std::size_t h = static_cast<std::size_t>(s.kind()) + 17;
  switch (s.kind()) {
    case Sort::Kind::Sum:
    case Sort::Kind::Pair:
      h = mix(h, hash_sort(s.left()));
      h = mix(h, hash_sort(s.right()));
      break;
    case Sort::Kind::Seq: h = mix(h, hash_sort(s.elem())); break;
    default: break;
  }
  return h;
}

template <class T>
std::size_t hash_branches(std::size_t h, const std::vector<Branch<T>>& bs) {
  for (const auto& b : bs) {
    h = mix(h, hash_str(b.label.name));
    h = mix(h, hash_sort(b.sort));
    h = mix(h, b.cont.hash());
  }
  return h;
}

template <class T>
std::size_t free_bound_of(const std::vector<Branch<T>>& bs) {
  std::size_t fb = 0;
  for (const auto& b : bs) fb = std::max(fb, b.cont.free_bound());
  return fb;
}

template <class T>
bool branches_equal(const std::vector<Branch<T>>& a, const std::vector<Branch<T>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].label != b[i].label || a[i].sort != b[i].sort || !(a[i].cont == b[i].cont)) return false;
  }
  return true;
}

template <class T>
std::strong_ordering branches_cmp(const std::vector<Branch<T>>& a, const std::vector<Branch<T>>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i].label <=> b[i].label; c != 0) return c;
    if (auto c = a[i].sort <=> b[i].sort; c != 0) return c;
    if (auto c = a[i].cont <=> b[i].cont; c != 0) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace detail

using detail::mix;

// ---------------------------------------------------------------- GlobalType

struct GlobalType::Node {
  Kind kind = Kind::End;
  std::size_t index = 0;
  Role from, to;
  Branches branches;
  std::vector<GlobalType> body;  // one element for Rec
  std::size_t hash = 0;
  std::size_t free_bound = 0;
};

GlobalType::GlobalType() : n_(GlobalType::end().n_) {}

GlobalType GlobalType::end() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::End;
    n->hash = 0x51ed;
    return std::shared_ptr<const Node>(n);
  }();
  return GlobalType(node);
}

GlobalType GlobalType::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = index;
  n->hash = mix(0x7a1, index);
  n->free_bound = index + 1;
  return GlobalType(std::move(n));
}

GlobalType GlobalType::rec(GlobalType body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rec;
  n->hash = mix(0x4ec, body.hash());
  n->free_bound = body.free_bound() > 0 ? body.free_bound() - 1 : 0;
  n->body.push_back(std::move(body));
  return GlobalType(std::move(n));
}

GlobalType GlobalType::msg(Role from, Role to, Branches branches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Msg;
  std::size_t h = mix(0x3a9, detail::hash_str(from.name));
  h = mix(h, detail::hash_str(to.name));
  n->hash = detail::hash_branches(h, branches);
  n->free_bound = detail::free_bound_of(branches);
  n->from = std::move(from);
  n->to = std::move(to);
  n->branches = std::move(branches);
  return GlobalType(std::move(n));
}

GlobalType::Kind GlobalType::kind() const { return n_->kind; }
std::size_t GlobalType::var_index() const { return n_->index; }
const GlobalType& GlobalType::body() const { return n_->body.at(0); }
const Role& GlobalType::from() const { return n_->from; }
const Role& GlobalType::to() const { return n_->to; }
const GlobalType::Branches& GlobalType::branches() const { return n_->branches; }
GlobalType GlobalType::with_branches(Branches bs) const { return msg(from(), to(), std::move(bs)); }
std::size_t GlobalType::hash() const { return n_->hash; }
std::size_t GlobalType::free_bound() const { return n_->free_bound; }

bool operator==(const GlobalType& a, const GlobalType& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->hash != b.n_->hash || a.n_->kind != b.n_->kind) return false;
  switch (a.kind()) {
    case GlobalType::Kind::End: return true;
    case GlobalType::Kind::Var: return a.var_index() == b.var_index();
    case GlobalType::Kind::Rec: return a.body() == b.body();
    case GlobalType::Kind::Msg:
      return a.from() == b.from() && a.to() == b.to() && detail::branches_equal(a.branches(), b.branches());
  }
  return false;
}

std::strong_ordering operator<=>(const GlobalType& a, const GlobalType& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case GlobalType::Kind::End: return std::strong_ordering::equal;
    case GlobalType::Kind::Var: return a.var_index() <=> b.var_index();
    case GlobalType::Kind::Rec: return a.body() <=> b.body();
    case GlobalType::Kind::Msg:
      if (auto c = a.from() <=> b.from(); c != 0) return c;
      if (auto c = a.to() <=> b.to(); c != 0) return c;
      return detail::branches_cmp(a.branches(), b.branches());
  }
  return std::strong_ordering::equal;
}

// ----------------------------------------------------------------- LocalType

struct LocalType::Node {
  Kind kind = Kind::End;
  std::size_t index = 0;
  Role peer;
  Branches branches;
  std::vector<LocalType> body;
  std::size_t hash = 0;
  std::size_t free_bound = 0;
};

LocalType::LocalType() : n_(LocalType::end().n_) {}

LocalType LocalType::end() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->hash = 0x1e4d;
    return std::shared_ptr<const Node>(n);
  }();
  return LocalType(node);
}

LocalType LocalType::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = index;
  n->hash = mix(0x1a1, index);
  n->free_bound = index + 1;
  return LocalType(std::move(n));
}

LocalType LocalType::rec(LocalType body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rec;
  n->hash = mix(0x1ec, body.hash());
  n->free_bound = body.free_bound() > 0 ? body.free_bound() - 1 : 0;
  n->body.push_back(std::move(body));
  return LocalType(std::move(n));
}

namespace {
template <class Node, class K, class Bs>
std::shared_ptr<Node> local_comm(K kind, Role peer, Bs branches, std::size_t seed) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->hash = detail::hash_branches(mix(seed, detail::hash_str(peer.name)), branches);
  n->peer = std::move(peer);
  n->branches = std::move(branches);
  return n;
}
}  // namespace

LocalType LocalType::send(Role peer, Branches branches) {
  auto n = local_comm<Node>(Kind::Send, std::move(peer), std::move(branches), 0x5e4d);
  n->free_bound = detail::free_bound_of(n->branches);
  return LocalType(std::move(n));
}

LocalType LocalType::recv(Role peer, Branches branches) {
  auto n = local_comm<Node>(Kind::Recv, std::move(peer), std::move(branches), 0x4ec7);
  n->free_bound = detail::free_bound_of(n->branches);
  return LocalType(std::move(n));
}

LocalType::Kind LocalType::kind() const { return n_->kind; }
std::size_t LocalType::var_index() const { return n_->index; }
const LocalType& LocalType::body() const { return n_->body.at(0); }
const Role& LocalType::peer() const { return n_->peer; }
const LocalType::Branches& LocalType::branches() const { return n_->branches; }
LocalType LocalType::with_branches(Branches bs) const {
  return kind() == Kind::Send ? send(peer(), std::move(bs)) : recv(peer(), std::move(bs));
}
std::size_t LocalType::hash() const { return n_->hash; }
std::size_t LocalType::free_bound() const { return n_->free_bound; }

bool operator==(const LocalType& a, const LocalType& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->hash != b.n_->hash || a.n_->kind != b.n_->kind) return false;
  switch (a.kind()) {
    case LocalType::Kind::End: return true;
    case LocalType::Kind::Var: return a.var_index() == b.var_index();
    case LocalType::Kind::Rec: return a.body() == b.body();
    case LocalType::Kind::Send:
    case LocalType::Kind::Recv:
      return a.peer() == b.peer() && detail::branches_equal(a.branches(), b.branches());
  }
  return false;
}

std::strong_ordering operator<=>(const LocalType& a, const LocalType& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case LocalType::Kind::End: return std::strong_ordering::equal;
    case LocalType::Kind::Var: return a.var_index() <=> b.var_index();
    case LocalType::Kind::Rec: return a.body() <=> b.body();
    case LocalType::Kind::Send:
    case LocalType::Kind::Recv:
      if (auto c = a.peer() <=> b.peer(); c != 0) return c;
      return detail::branches_cmp(a.branches(), b.branches());
  }
  return std::strong_ordering::equal;
}

// ----------------------------------------------------------------- LocalTree

struct LocalTree::Node {
  Kind kind = Kind::End;
  Role peer;
  Branches branches;
  std::size_t hash = 0;
};

LocalTree::LocalTree() : n_(LocalTree::end().n_) {}

LocalTree LocalTree::end() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->hash = 0x7e4d;
    return std::shared_ptr<const Node>(n);
  }();
  return LocalTree(node);
}

LocalTree LocalTree::cut() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cut;
    n->hash = 0xc07;
    return std::shared_ptr<const Node>(n);
  }();
  return LocalTree(node);
}

LocalTree LocalTree::send(Role peer, Branches branches) {
  return LocalTree(local_comm<Node>(Kind::Send, std::move(peer), std::move(branches), 0x75e4));
}

LocalTree LocalTree::recv(Role peer, Branches branches) {
  return LocalTree(local_comm<Node>(Kind::Recv, std::move(peer), std::move(branches), 0x74ec));
}

LocalTree::Kind LocalTree::kind() const { return n_->kind; }
const Role& LocalTree::peer() const { return n_->peer; }
const LocalTree::Branches& LocalTree::branches() const { return n_->branches; }
std::size_t LocalTree::hash() const { return n_->hash; }

bool operator==(const LocalTree& a, const LocalTree& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->hash != b.n_->hash || a.n_->kind != b.n_->kind) return false;
  if (a.kind() == LocalTree::Kind::End || a.kind() == LocalTree::Kind::Cut) return true;
  return a.peer() == b.peer() && detail::branches_equal(a.branches(), b.branches());
}

std::strong_ordering operator<=>(const LocalTree& a, const LocalTree& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() == LocalTree::Kind::End || a.kind() == LocalTree::Kind::Cut) return std::strong_ordering::equal;
  if (auto c = a.peer() <=> b.peer(); c != 0) return c;
  return detail::branches_cmp(a.branches(), b.branches());
}

}  // namespace mpst
