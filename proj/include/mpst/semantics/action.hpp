#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "mpst/core/names.hpp"
#include "mpst/core/sort.hpp"

namespace mpst {

enum class Dir : std::uint8_t { Send, Recv };

// !subj,other(label,sort) for a send by subj to other,
// ?subj,other(label,sort) for a receive by subj from other.
struct Action {
  Dir dir = Dir::Send;
  Role subj;
  Role other;
  Label label;
  Sort sort;

  friend bool operator==(const Action&, const Action&) = default;
  friend std::strong_ordering operator<=>(const Action& a, const Action& b) {
    if (auto c = a.dir <=> b.dir; c != 0) return c;
    if (auto c = a.subj <=> b.subj; c != 0) return c;
    if (auto c = a.other <=> b.other; c != 0) return c;
    if (auto c = a.label <=> b.label; c != 0) return c;
    return a.sort <=> b.sort;
  }
};

std::string to_string(const Action& a);

using Trace = std::vector<Action>;
using TraceSet = std::set<Trace>;

std::string to_string(const Trace& t);

// Bounded trace sets: every admissible prefix up to the depth, and the
// prefixes that end in a terminated state.
struct Traces {
  TraceSet prefixes;
  TraceSet completed;
  friend bool operator==(const Traces&, const Traces&) = default;
};

}  // namespace mpst
