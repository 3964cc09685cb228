#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/process/ast.hpp"

namespace mpst {

// Signature of an external function; unit stands for "no argument" or
// "no result".
struct ExternSig {
  Sort arg;
  Sort result;
  friend bool operator==(const ExternSig&, const ExternSig&) = default;
};

using ExternSigs = std::map<std::string, ExternSig>;

struct TypingCtx {
  std::vector<std::pair<std::string, Sort>> vars;  // innermost binding last
  ExternSigs externs;

  std::optional<Sort> lookup(const std::string& name) const;
  TypingCtx with(std::string name, Sort s) const;
};

struct TypeError {
  enum class Kind {
    UnboundVariable,
    SortMismatch,
    UnknownExtern,
    BranchTypeMismatch,
    DuplicateLabel,
    MissingDefault,
    MultipleDefaults,
    DefaultBeforeCase,
    EmptyChoice,
    ExternSignatureMismatch,
    JumpOutOfScope,
    UnguardedLoop,
  };
  Kind kind;
  std::string rule;  // typing rule in force, e.g. "p-ty-send"
  std::string message;
};

std::string to_string(TypeError::Kind k);

Expected<Sort, TypeError> typecheck_expr(const TypingCtx& ctx, const Expr& e);
Expected<LocalType, TypeError> typecheck_proc(const TypingCtx& ctx, const Proc& p);

// Equality up to unravelling, checked on trees of the given depth.
bool ltype_equiv_bounded(const LocalType& a, const LocalType& b, std::size_t depth);

}  // namespace mpst
