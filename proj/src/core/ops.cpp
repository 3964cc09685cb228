#include "mpst/core/ops.hpp"

#include <optional>

namespace mpst {

std::string to_string(WellFormednessError::Kind k) {
  switch (k) {
    case WellFormednessError::Kind::NotGuarded: return "NotGuarded";
    case WellFormednessError::Kind::NotClosed: return "NotClosed";
    case WellFormednessError::Kind::EmptyBranches: return "EmptyBranches";
    case WellFormednessError::Kind::SelfMessage: return "SelfMessage";
    case WellFormednessError::Kind::DuplicateLabel: return "DuplicateLabel";
  }
  return "?";
}

namespace {

void collect_participants(const GlobalType& g, std::set<Role>& out) {
  switch (g.kind()) {
    case GlobalType::Kind::Rec: collect_participants(g.body(), out); break;
    case GlobalType::Kind::Msg:
      out.insert(g.from());
      out.insert(g.to());
      for (const auto& b : g.branches()) collect_participants(b.cont, out);
      break;
    default: break;
  }
}

template <class T>
void collect_labels(const T& t, std::set<Label>& out) {
  if (t.kind() == T::Kind::Rec) {
    collect_labels(t.body(), out);
  } else if (t.kind() != T::Kind::End && t.kind() != T::Kind::Var) {
    for (const auto& b : t.branches()) {
      out.insert(b.label);
      collect_labels(b.cont, out);
    }
  }
}

template <class T>
bool guarded_impl(const T& t) {
  switch (t.kind()) {
    case T::Kind::End:
    case T::Kind::Var: return true;
    case T::Kind::Rec:
      if (t.body().kind() == T::Kind::Var || pure_rec(t.body())) return false;
      return guarded_impl(t.body());
    default:
      for (const auto& b : t.branches())
        if (!guarded_impl(b.cont)) return false;
      return true;
  }
}

template <class T>
struct WfChecker {
  std::vector<std::string> path;

  std::optional<WellFormednessError> fail(WellFormednessError::Kind k, std::string msg) {
    return WellFormednessError{k, path, std::move(msg)};
  }

  std::optional<WellFormednessError> check(const T& t, std::size_t depth) {
    switch (t.kind()) {
      case T::Kind::End: return std::nullopt;
      case T::Kind::Var:
        if (t.var_index() >= depth)
          return fail(WellFormednessError::Kind::NotClosed,
                      "variable index " + std::to_string(t.var_index()) + " is not bound");
        return std::nullopt;
      case T::Kind::Rec: {
        if (t.body().kind() == T::Kind::Var || pure_rec(t.body()))
          return fail(WellFormednessError::Kind::NotGuarded, "recursion body is an unguarded variable");
        path.push_back("rec");
        auto r = check(t.body(), depth + 1);
        path.pop_back();
        return r;
      }
      default: break;
    }
    if (auto e = check_comm(t)) return e;
    if (t.branches().empty()) return fail(WellFormednessError::Kind::EmptyBranches, "message with no branches");
    std::set<Label> seen;
    for (const auto& b : t.branches()) {
      if (!seen.insert(b.label).second)
        return fail(WellFormednessError::Kind::DuplicateLabel, "label " + b.label.name + " appears twice");
    }
    for (const auto& b : t.branches()) {
      path.push_back(b.label.name);
      auto r = check(b.cont, depth);
      path.pop_back();
      if (r) return r;
    }
    return std::nullopt;
  }

  std::optional<WellFormednessError> check_comm(const GlobalType& g) {
    if (g.from() == g.to())
      return fail(WellFormednessError::Kind::SelfMessage, "role " + g.from().name + " sends to itself");
    return std::nullopt;
  }
  std::optional<WellFormednessError> check_comm(const LocalType&) { return std::nullopt; }
};

template <class T>
Status<WellFormednessError> well_formed_impl(const T& t) {
  WfChecker<T> c;
  if (auto e = c.check(t, 0)) return unexpected(*e);
  return Ok{};
}

template <class T>
Expected<T, UnfoldError> unfold1_impl(const T& t) {
  if (t.kind() != T::Kind::Rec) return unexpected(UnfoldError{"NotARec: head is not a recursion binder"});
  return subst(t.body(), 0, t);
}

template <class T>
bool unfold_head_impl(T& t, std::size_t fuel) {
  std::size_t n = 0;
  while (t.kind() == T::Kind::Rec) {
    if (n++ >= fuel) return false;
    t = subst(t.body(), 0, t);
  }
  return true;
}

}  // namespace

std::set<Role> participants(const GlobalType& g) {
  std::set<Role> out;
  collect_participants(g, out);
  return out;
}

std::set<Label> labels(const GlobalType& g) {
  std::set<Label> out;
  collect_labels(g, out);
  return out;
}

std::set<Label> labels(const LocalType& l) {
  std::set<Label> out;
  collect_labels(l, out);
  return out;
}

RoleTable role_table(const GlobalType& g) { return RoleTable(participants(g)); }
LabelTable label_table(const GlobalType& g) { return LabelTable(labels(g)); }

bool guarded(const GlobalType& g) { return guarded_impl(g); }
bool guarded(const LocalType& l) { return guarded_impl(l); }
bool closed(const GlobalType& g) { return g.free_bound() == 0; }
bool closed(const LocalType& l) { return l.free_bound() == 0; }

Status<WellFormednessError> well_formed(const GlobalType& g) { return well_formed_impl(g); }
Status<WellFormednessError> well_formed(const LocalType& l) { return well_formed_impl(l); }

Expected<GlobalType, UnfoldError> unfold1(const GlobalType& g) { return unfold1_impl(g); }
Expected<LocalType, UnfoldError> unfold1(const LocalType& l) { return unfold1_impl(l); }

bool unfold_head(GlobalType& g, std::size_t fuel) { return unfold_head_impl(g, fuel); }
bool unfold_head(LocalType& l, std::size_t fuel) { return unfold_head_impl(l, fuel); }

LocalTree local_tree_expand(const LocalType& l, std::size_t depth, std::size_t fuel) {
  LocalType cur = l;
  if (!unfold_head(cur, fuel)) return LocalTree::cut();
  switch (cur.kind()) {
    case LocalType::Kind::End: return LocalTree::end();
    case LocalType::Kind::Var:
    case LocalType::Kind::Rec: return LocalTree::cut();
    default: break;
  }
  if (depth == 0) return LocalTree::cut();
  LocalTree::Branches bs;
  bs.reserve(cur.branches().size());
  for (const auto& b : cur.branches()) bs.push_back({b.label, b.sort, local_tree_expand(b.cont, depth - 1, fuel)});
  return cur.kind() == LocalType::Kind::Send ? LocalTree::send(cur.peer(), std::move(bs))
                                             : LocalTree::recv(cur.peer(), std::move(bs));
}

LocalTree tree_truncate(const LocalTree& t, std::size_t depth) {
  if (t.kind() == LocalTree::Kind::End || t.kind() == LocalTree::Kind::Cut) return t;
  if (depth == 0) return LocalTree::cut();
  LocalTree::Branches bs;
  for (const auto& b : t.branches()) bs.push_back({b.label, b.sort, tree_truncate(b.cont, depth - 1)});
  return t.kind() == LocalTree::Kind::Send ? LocalTree::send(t.peer(), std::move(bs))
                                           : LocalTree::recv(t.peer(), std::move(bs));
}

}  // namespace mpst
