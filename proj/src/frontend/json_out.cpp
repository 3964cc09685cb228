#include "mpst/frontend/json_out.hpp"

namespace mpst::frontend {

json to_json(const Action& a) {
  return json{{"dir", a.dir == Dir::Send ? "send" : "recv"},
              {"subj", a.subj.name},
              {"other", a.other.name},
              {"label", a.label.name},
              {"sort", a.sort.to_string()}};
}

json to_json(const Trace& t) {
  json out = json::array();
  for (const auto& a : t) out.push_back(to_json(a));
  return out;
}

namespace {
json trace_set(const TraceSet& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(to_json(t));
  return out;
}

template <class T, class F>
json branches(const std::vector<Branch<T>>& bs, F cont) {
  json out = json::array();
  for (const auto& b : bs) out.push_back(json{{"label", b.label.name}, {"sort", b.sort.to_string()}, {"cont", cont(b.cont)}});
  return out;
}
}  // namespace

json to_json(const Traces& t) { return json{{"prefixes", trace_set(t.prefixes)}, {"completed", trace_set(t.completed)}}; }

json to_json(const ValueAction& a) {
  json j = to_json(erase(a));
  j["value"] = pretty_expr(Expr::lit(a.value, a.sort));
  return j;
}

json to_json(const GlobalType& g) {
  switch (g.kind()) {
    case GlobalType::Kind::End:
      return json{{"kind", "end"}};
    case GlobalType::Kind::Var:
      return json{{"kind", "var"}, {"index", g.var_index()}};
    case GlobalType::Kind::Rec:
      return json{{"kind", "rec"}, {"body", to_json(g.body())}};
    case GlobalType::Kind::Msg:
      break;
  }
  return json{{"kind", "msg"},
              {"from", g.from().name},
              {"to", g.to().name},
              {"branches", branches(g.branches(), [](const GlobalType& k) { return to_json(k); })}};
}

json to_json(const LocalType& l) {
  switch (l.kind()) {
    case LocalType::Kind::End:
      return json{{"kind", "end"}};
    case LocalType::Kind::Var:
      return json{{"kind", "var"}, {"index", l.var_index()}};
    case LocalType::Kind::Rec:
      return json{{"kind", "rec"}, {"body", to_json(l.body())}};
    case LocalType::Kind::Send:
    case LocalType::Kind::Recv:
      break;
  }
  return json{{"kind", l.kind() == LocalType::Kind::Send ? "send" : "recv"},
              {"peer", l.peer().name},
              {"branches", branches(l.branches(), [](const LocalType& k) { return to_json(k); })}};
}

json to_json(const LocalTree& t) {
  switch (t.kind()) {
    case LocalTree::Kind::End:
      return json{{"kind", "end"}};
    case LocalTree::Kind::Cut:
      return json{{"kind", "cut"}};
    case LocalTree::Kind::Send:
    case LocalTree::Kind::Recv:
      break;
  }
  return json{{"kind", t.kind() == LocalTree::Kind::Send ? "send" : "recv"},
              {"peer", t.peer().name},
              {"branches", branches(t.branches(), [](const LocalTree& k) { return to_json(k); })}};
}

json to_json(const Diagnostic& d) {
  json j{{"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
         {"file", d.file},
         {"line", d.line},
         {"column", d.column},
         {"message", d.message}};
  if (!d.rule.empty()) j["rule"] = d.rule;
  return j;
}

json to_json(const EquivReport& r) {
  json j{{"depth", r.depth},
         {"verdict", r.equal ? "Equal" : "NotEqual"},
         {"global_traces", r.global_trace_count},
         {"local_traces", r.local_trace_count}};
  if (r.counterexample) {
    j["counterexample"] = to_json(*r.counterexample);
    j["side"] = r.side == TraceSide::GlobalOnly ? "global_only" : "local_only";
    j["completion"] = r.counterexample_is_completion;
  }
  return j;
}

json to_json(const TheoremReport& r) {
  json j{{"ok", r.ok()}, {"configs", r.configs_checked}, {"steps", r.steps_checked}};
  if (r.violation) {
    json v{{"path", to_json(r.violation->path)}, {"detail", r.violation->detail}};
    if (r.violation->action) v["action"] = to_json(*r.violation->action);
    j["violation"] = v;
  }
  return j;
}

json to_json(const ConformanceReport& r) {
  json j{{"ok", r.ok}, {"failed_stage", r.failed_stage}};
  if (!r.message.empty()) j["message"] = r.message;
  if (!r.rule.empty()) j["rule"] = r.rule;
  if (r.synthesized) j["synthesized"] = pretty_local(*r.synthesized);
  if (r.projected) j["projected"] = pretty_local(*r.projected);
  if (r.global_depth) {
    j["process_traces"] = r.process_traces;
    j["global_depth"] = r.global_depth;
  }
  if (r.unmatched) j["unmatched"] = to_json(*r.unmatched);
  return j;
}

}  // namespace mpst::frontend
