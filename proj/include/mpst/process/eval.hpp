#pragma once

#include <functional>
#include <optional>
#include <string>

#include "mpst/core/expected.hpp"
#include "mpst/process/ast.hpp"

namespace mpst {

using VarLookup = std::function<std::optional<Value>(const std::string&)>;
using ExternCall = std::function<Expected<Value, std::string>(const std::string&, const Value&)>;

// Nat subtraction truncates at zero; overflow and division by zero are
// evaluation errors.
Expected<Value, std::string> evaluate(const Expr& e, const VarLookup& vars, const ExternCall& call);

}  // namespace mpst
