#pragma once

#include <compare>
#include <memory>
#include <set>
#include <vector>

#include "mpst/core/types.hpp"

namespace mpst {

// Global type annotated with in-flight messages. A subterm without any
// MsgSent marker is stored as a plain GlobalType, which keeps one canonical
// representation per configuration.
class GlobalConfig {
 public:
  enum class Kind : std::uint8_t { End, Var, Rec, Msg, MsgSent };
  using Branches = std::vector<Branch<GlobalConfig>>;

  GlobalConfig();
  static GlobalConfig of(GlobalType g);
  // Collapses to a plain type when no branch carries a marker.
  static GlobalConfig msg(Role from, Role to, Branches branches);
  static GlobalConfig msg_sent(Role from, Role to, std::size_t chosen, Branches branches);

  Kind kind() const;
  bool is_type() const;
  const GlobalType& type() const;  // requires is_type()

  // For the marker-carrying nodes (Msg with a marked branch, MsgSent).
  const Role& from() const;
  const Role& to() const;
  std::size_t chosen() const;
  const Branches& branches() const;

  std::size_t hash() const;

  friend bool operator==(const GlobalConfig& a, const GlobalConfig& b);
  friend std::strong_ordering operator<=>(const GlobalConfig& a, const GlobalConfig& b);

 private:
  struct Node;
  explicit GlobalConfig(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

GlobalConfig initial_config(const GlobalType& g);
std::set<Role> participants(const GlobalConfig& c);
// Forgets which messages are in flight.
GlobalType erase_markers(const GlobalConfig& c);
// Unfolds Rec heads; true iff the result is End.
bool is_terminated(const GlobalConfig& c, std::size_t fuel = 64);

}  // namespace mpst
