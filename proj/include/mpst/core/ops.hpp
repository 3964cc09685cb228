#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/core/types.hpp"

namespace mpst {

inline constexpr std::size_t kDefaultFuel = 64;

// --- de Bruijn helpers, shared by global and local types -------------------

template <class T>
T shift(const T& t, std::ptrdiff_t d, std::size_t cutoff = 0) {
  if (t.free_bound() <= cutoff || d == 0) return t;
  switch (t.kind()) {
    case T::Kind::Var:
      return T::var(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t.var_index()) + d));
    case T::Kind::Rec: return T::rec(shift(t.body(), d, cutoff + 1));
    case T::Kind::End: return t;
    default: {
      auto bs = t.branches();
      for (auto& b : bs) b.cont = shift(b.cont, d, cutoff);
      return t.with_branches(std::move(bs));
    }
  }
}

// Replaces index k by s (shifted under binders) and lowers indices above k.
template <class T>
T subst(const T& t, std::size_t k, const T& s) {
  if (t.free_bound() <= k) return t;
  switch (t.kind()) {
    case T::Kind::Var:
      if (t.var_index() == k) return shift(s, static_cast<std::ptrdiff_t>(k));
      return T::var(t.var_index() - 1);
    case T::Kind::Rec: return T::rec(subst(t.body(), k + 1, s));
    case T::Kind::End: return t;
    default: {
      auto bs = t.branches();
      for (auto& b : bs) b.cont = subst(b.cont, k, s);
      return t.with_branches(std::move(bs));
    }
  }
}

// True when index k occurs free in t.
template <class T>
bool occurs_free(const T& t, std::size_t k) {
  if (t.free_bound() <= k) return false;
  switch (t.kind()) {
    case T::Kind::Var: return t.var_index() == k;
    case T::Kind::Rec: return occurs_free(t.body(), k + 1);
    case T::Kind::End: return false;
    default:
      for (const auto& b : t.branches())
        if (occurs_free(b.cont, k)) return true;
      return false;
  }
}

// Rec^n(Var n) for some n >= 0, relative to the binder enclosing t.
template <class T>
bool pure_rec(const T& t) {
  const T* cur = &t;
  std::size_t n = 0;
  while (cur->kind() == T::Kind::Rec) {
    cur = &cur->body();
    ++n;
  }
  return cur->kind() == T::Kind::Var && cur->var_index() == n;
}

// --- errors ----------------------------------------------------------------

struct WellFormednessError {
  enum class Kind { NotGuarded, NotClosed, EmptyBranches, SelfMessage, DuplicateLabel };
  Kind kind;
  std::vector<std::string> path;  // "rec" or chosen labels from the root
  std::string message;
};

std::string to_string(WellFormednessError::Kind k);

struct UnfoldError {
  std::string message;
};

// --- global type operations ------------------------------------------------

std::set<Role> participants(const GlobalType& g);
std::set<Label> labels(const GlobalType& g);
std::set<Label> labels(const LocalType& l);
RoleTable role_table(const GlobalType& g);
LabelTable label_table(const GlobalType& g);

bool guarded(const GlobalType& g);
bool guarded(const LocalType& l);
bool closed(const GlobalType& g);
bool closed(const LocalType& l);
Status<WellFormednessError> well_formed(const GlobalType& g);
Status<WellFormednessError> well_formed(const LocalType& l);

Expected<GlobalType, UnfoldError> unfold1(const GlobalType& g);
Expected<LocalType, UnfoldError> unfold1(const LocalType& l);

// Unfolds Rec heads until a non-Rec head. Returns false when the fuel ran out.
bool unfold_head(GlobalType& g, std::size_t fuel = kDefaultFuel);
bool unfold_head(LocalType& l, std::size_t fuel = kDefaultFuel);

// Expands l into its unravelling up to `depth` communication levels. Rec
// heads are unfolded on the fly, at most `fuel` times in a row.
LocalTree local_tree_expand(const LocalType& l, std::size_t depth, std::size_t fuel = kDefaultFuel);
LocalTree tree_truncate(const LocalTree& t, std::size_t depth);

}  // namespace mpst
