#pragma once

#include "json.hpp"
#include "mpst/frontend/syntax.hpp"
#include "mpst/process/conformance.hpp"
#include "mpst/process/lts.hpp"
#include "mpst/semantics/lts.hpp"

namespace mpst::frontend {

using nlohmann::json;

// Actions: {"dir": "send"|"recv", "subj", "other", "label", "sort"}.
json to_json(const Action& a);
json to_json(const Trace& t);
json to_json(const Traces& t);
json to_json(const ValueAction& a);  // adds "value"
// Types: {"kind": "end"|"var"|"rec"|"msg"|"send"|"recv"|"cut", ...}.
json to_json(const GlobalType& g);
json to_json(const LocalType& l);
json to_json(const LocalTree& t);
json to_json(const Diagnostic& d);
json to_json(const EquivReport& r);
json to_json(const TheoremReport& r);
json to_json(const ConformanceReport& r);

}  // namespace mpst::frontend
