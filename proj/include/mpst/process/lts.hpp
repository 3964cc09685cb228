#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/process/ast.hpp"
#include "mpst/process/typing.hpp"
#include "mpst/semantics/action.hpp"

namespace mpst {

struct ValueAction {
  Dir dir = Dir::Send;
  Role subj;
  Role other;
  Label label;
  Value value;
  Sort sort;

  friend bool operator==(const ValueAction&, const ValueAction&) = default;
  friend std::strong_ordering operator<=>(const ValueAction& a, const ValueAction& b) {
    if (auto c = a.dir <=> b.dir; c != 0) return c;
    if (auto c = a.subj <=> b.subj; c != 0) return c;
    if (auto c = a.other <=> b.other; c != 0) return c;
    if (auto c = a.label <=> b.label; c != 0) return c;
    if (auto c = a.sort <=> b.sort; c != 0) return c;
    return a.value <=> b.value;
  }
};

using ValueTrace = std::vector<ValueAction>;

Action erase(const ValueAction& a);
Trace erase(const ValueTrace& t);
std::string to_string(const ValueAction& a);

// Pure stand-ins for external functions. Plain function pointers cannot
// capture state, which keeps enumeration deterministic.
using StubFn = Value (*)(const Value&);

class StubRegistry {
 public:
  void add(std::string name, ExternSig sig, StubFn fn);
  const StubFn* find(const std::string& name) const;
  ExternSigs signatures() const;

 private:
  std::map<std::string, std::pair<ExternSig, StubFn>> fns_;
};

struct ProcError {
  enum class Kind { NotEnabled, LabelNotOffered, EvaluationError };
  Kind kind;
  std::string message;
};

std::string to_string(ProcError::Kind k);

// Process at a communication point after internal steps are evaluated.
struct ProcHead {
  enum class Kind { Finish, Send, Recv } kind = Kind::Finish;
  Role peer;
  Label label;  // Send
  Value value;  // Send
  Sort sort;    // Send
  Proc proc;    // Send: continuation; Recv: the receiving process
};

Expected<ProcHead, ProcError> proc_normalize(const Proc& p, const StubRegistry& stubs);

// The subject of `a` is not checked: a process does not know its own role.
Expected<Proc, ProcError> proc_step(const Proc& p, const ValueAction& a, const StubRegistry& stubs);

struct ProcStep {
  ValueAction action;
  Proc next;
};

Expected<std::vector<ProcStep>, ProcError> proc_enabled(const Proc& p, const Role& self, const StubRegistry& stubs,
                                                        const ValueUniverse& universe);

struct ProcTraces {
  std::set<ValueTrace> prefixes;
  std::set<ValueTrace> completed;  // ending in Finish
};

Expected<ProcTraces, ProcError> proc_traces(const Proc& p, const Role& self, std::size_t depth,
                                            const StubRegistry& stubs, const ValueUniverse& universe = {});

// Replaces free occurrences of a payload variable by a literal.
Proc subst_value(const Proc& p, const std::string& var, const Value& v, const Sort& s);

}  // namespace mpst
