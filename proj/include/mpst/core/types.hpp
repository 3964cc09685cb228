#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <vector>

#include "mpst/core/names.hpp"
#include "mpst/core/sort.hpp"

namespace mpst {

template <class Cont>
struct Branch {
  Label label;
  Sort sort;
  Cont cont;
};

namespace detail {
inline std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}
std::size_t hash_str(const std::string& s);
std::size_t hash_sort(const Sort& s);
}  // namespace detail

// Global types with de Bruijn binders. Nodes are immutable and shared.
class GlobalType {
 public:
  enum class Kind : std::uint8_t { End, Var, Rec, Msg };
  using Branches = std::vector<Branch<GlobalType>>;

  GlobalType();
  static GlobalType end();
  static GlobalType var(std::size_t index);
  static GlobalType rec(GlobalType body);
  static GlobalType msg(Role from, Role to, Branches branches);

  Kind kind() const;
  std::size_t var_index() const;
  const GlobalType& body() const;
  const Role& from() const;
  const Role& to() const;
  const Branches& branches() const;
  GlobalType with_branches(Branches bs) const;

  std::size_t hash() const;
  // One more than the largest free de Bruijn index, 0 when closed.
  std::size_t free_bound() const;

  friend bool operator==(const GlobalType& a, const GlobalType& b);
  friend std::strong_ordering operator<=>(const GlobalType& a, const GlobalType& b);

 private:
  struct Node;
  explicit GlobalType(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

class LocalType {
 public:
  enum class Kind : std::uint8_t { End, Var, Rec, Send, Recv };
  using Branches = std::vector<Branch<LocalType>>;

  LocalType();
  static LocalType end();
  static LocalType var(std::size_t index);
  static LocalType rec(LocalType body);
  static LocalType send(Role peer, Branches branches);
  static LocalType recv(Role peer, Branches branches);

  Kind kind() const;
  std::size_t var_index() const;
  const LocalType& body() const;
  const Role& peer() const;
  const Branches& branches() const;
  LocalType with_branches(Branches bs) const;

  std::size_t hash() const;
  std::size_t free_bound() const;

  friend bool operator==(const LocalType& a, const LocalType& b);
  friend std::strong_ordering operator<=>(const LocalType& a, const LocalType& b);

 private:
  struct Node;
  explicit LocalType(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Finite prefix of the unravelling of a local type. Cut marks where the
// expansion stopped.
class LocalTree {
 public:
  enum class Kind : std::uint8_t { End, Cut, Send, Recv };
  using Branches = std::vector<Branch<LocalTree>>;

  LocalTree();
  static LocalTree end();
  static LocalTree cut();
  static LocalTree send(Role peer, Branches branches);
  static LocalTree recv(Role peer, Branches branches);

  Kind kind() const;
  const Role& peer() const;
  const Branches& branches() const;
  std::size_t hash() const;

  friend bool operator==(const LocalTree& a, const LocalTree& b);
  friend std::strong_ordering operator<=>(const LocalTree& a, const LocalTree& b);

 private:
  struct Node;
  explicit LocalTree(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

}  // namespace mpst
