// mpst: protocol checking, projection, bounded verification and endpoint
// execution from the command line.
//
// Exit codes: 0 success, 1 a check failed (diagnostics on stderr),
// 2 unreadable input or bad usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mpst/frontend/json_out.hpp"
#include "mpst/frontend/syntax.hpp"
#include "mpst/parallel/batch.hpp"
#include "mpst/process/conformance.hpp"
#include "mpst/projection/projection.hpp"
#include "mpst/runtime/endpoint.hpp"
#include "mpst/runtime/host.hpp"
#include "mpst/semantics/lts.hpp"

using namespace mpst;
using frontend::Diagnostic;
using frontend::Diagnostics;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Exit {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": error: cannot read file\n";
    throw Exit{kUsage};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Diagnostic diag(const std::string& file, std::string message, std::string rule = {}) {
  return Diagnostic{Diagnostic::Severity::Error, file, 1, 1, std::move(message), std::move(rule)};
}

[[noreturn]] void fail(Diagnostics ds, const std::string& file, bool as_json, int code = kFailed) {
  for (auto& d : ds)
    if (d.file.empty()) d.file = file;
  if (as_json) {
    json j{{"ok", false}, {"diagnostics", json::array()}};
    for (const auto& d : ds) j["diagnostics"].push_back(frontend::to_json(d));
    std::cout << j.dump(2) << "\n";
  }
  for (const auto& d : ds) std::cerr << frontend::to_string(d) << "\n";
  throw Exit{code};
}

GlobalType load_protocol(const std::string& path, bool as_json) {
  auto g = frontend::parse_global(read_file(path));
  if (!g) fail(g.error(), path, as_json);
  if (auto wf = well_formed(*g); !wf)
    fail({diag(path, to_string(wf.error().kind) + ": " + wf.error().message)}, path, as_json);
  return *g;
}

frontend::ProcFile load_process(const std::string& path, bool as_json) {
  auto p = frontend::parse_proc_file(read_file(path));
  if (!p) fail(p.error(), path, as_json);
  return *p;
}

Diagnostic projection_diag(const std::string& file, const ProjectionError& e) {
  std::string msg = to_string(e.kind);
  if (e.role) msg += " projecting onto " + e.role->name;
  if (!e.path.empty()) {
    msg += " at";
    for (const auto& p : e.path) msg += " " + p;
  }
  msg += ": " + e.message;
  if (e.detail) msg += " (" + frontend::pretty_local(e.detail->first) + " vs " + frontend::pretty_local(e.detail->second) + ")";
  return diag(file, msg, e.rule);
}

std::string trace_text(const Trace& t) {
  if (t.empty()) return "(empty)";
  std::string s;
  for (const auto& a : t) s += (s.empty() ? "" : " ") + to_string(a);
  return s;
}

// --- subcommands -------------------------------------------------------------

int cmd_check(const std::string& file, bool as_json) {
  GlobalType g = load_protocol(file, as_json);
  auto env = project_all(g);
  if (!env) fail({projection_diag(file, env.error())}, file, as_json);
  if (as_json) {
    json j{{"ok", true}, {"participants", json::array()}};
    for (const auto& [r, _] : *env) j["participants"].push_back(r.name);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "ok: well-formed, projectable onto";
    for (const auto& [r, _] : *env) std::cout << " " << r.name;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_project(const std::string& file, const std::string& role, bool as_json) {
  GlobalType g = load_protocol(file, as_json);
  std::vector<Role> roles;
  if (role.empty()) {
    for (const auto& r : participants(g)) roles.push_back(r);
  } else {
    roles.push_back(Role{role});
  }
  json j = json::object();
  for (const auto& r : roles) {
    auto l = project(g, r);
    if (!l) fail({projection_diag(file, l.error())}, file, as_json);
    if (as_json) {
      j[r.name] = {{"text", frontend::pretty_local(*l)}, {"type", frontend::to_json(*l)}};
    } else if (roles.size() == 1) {
      std::cout << frontend::pretty_local(*l) << "\n";
    } else {
      std::cout << r.name << ": " << frontend::pretty_local(*l) << "\n";
    }
  }
  if (as_json) std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_simulate(const std::string& file, std::size_t depth, bool as_json) {
  GlobalType g = load_protocol(file, as_json);
  auto t = parallel::traces_global_parallel(initial_config(g), depth);
  if (!t) fail({diag(file, to_string(t.error().kind) + ": " + t.error().message)}, file, as_json);
  if (as_json) {
    json j = frontend::to_json(*t);
    j["depth"] = depth;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "prefixes (" << t->prefixes.size() << "):\n";
  for (const auto& tr : t->prefixes) std::cout << "  " << trace_text(tr) << "\n";
  std::cout << "completed (" << t->completed.size() << "):\n";
  for (const auto& tr : t->completed) std::cout << "  " << trace_text(tr) << "\n";
  return kOk;
}

int cmd_equiv(const std::string& file, std::size_t depth, bool as_json) {
  GlobalType g = load_protocol(file, as_json);
  auto env = project_all(g);
  if (!env) fail({projection_diag(file, env.error())}, file, as_json);
  auto r = check_trace_equiv(g, *env, depth);
  if (!r) fail({diag(file, to_string(r.error().kind) + ": " + r.error().message)}, file, as_json);
  if (as_json) {
    std::cout << frontend::to_json(*r).dump(2) << "\n";
  } else {
    std::cout << (r->equal ? "Equal" : "NotEqual") << " at depth " << depth << " (" << r->global_trace_count
              << " global traces, " << r->local_trace_count << " local traces)\n";
    if (r->counterexample)
      std::cout << "counterexample (" << (r->side == TraceSide::GlobalOnly ? "global only" : "local only")
                << (r->counterexample_is_completion ? ", completion" : "") << "): " << trace_text(*r->counterexample)
                << "\n";
  }
  return r->equal ? kOk : kFailed;
}

int cmd_soundness(const std::string& file, std::size_t depth, std::size_t tree_depth, bool as_json) {
  GlobalType g = load_protocol(file, as_json);
  if (auto env = project_all(g); !env) fail({projection_diag(file, env.error())}, file, as_json);
  TheoremOptions opts;
  opts.tree_depth = tree_depth;
  auto s = check_step_soundness(g, depth, opts);
  auto c = check_step_completeness(g, depth, opts);
  for (const auto* r : {&s, &c})
    if (!*r) fail({diag(file, to_string(r->error().kind) + ": " + r->error().message)}, file, as_json);
  const bool ok = s->ok() && c->ok();
  if (as_json) {
    std::cout << json{{"ok", ok}, {"soundness", frontend::to_json(*s)}, {"completeness", frontend::to_json(*c)}}.dump(2)
              << "\n";
    return ok ? kOk : kFailed;
  }
  auto show = [](const char* name, const TheoremReport& r) {
    std::cout << name << ": " << (r.ok() ? "ok" : "VIOLATED") << " (" << r.configs_checked << " configurations, "
              << r.steps_checked << " steps)\n";
    if (r.violation) {
      std::cout << "  after: " << trace_text(r.violation->path) << "\n";
      if (r.violation->action) std::cout << "  action: " << to_string(*r.violation->action) << "\n";
      std::cout << "  " << r.violation->detail << "\n";
    }
  };
  show("soundness", *s);
  show("completeness", *c);
  return ok ? kOk : kFailed;
}

// Stubs for stage 3: each declared extern returns a fixed value of its result sort.
StubRegistry default_stubs(const ExternSigs& sigs) {
  StubRegistry st;
  static const StubFn by_sort[] = {
      [](const Value&) { return Value::nat(0); }, [](const Value&) { return Value::integer(0); },
      [](const Value&) { return Value::boolean(false); }, [](const Value&) { return Value::unit(); }};
  for (const auto& [name, sig] : sigs) {
    switch (sig.result.kind()) {
      case Sort::Kind::Nat: st.add(name, sig, by_sort[0]); break;
      case Sort::Kind::Int: st.add(name, sig, by_sort[1]); break;
      case Sort::Kind::Bool: st.add(name, sig, by_sort[2]); break;
      case Sort::Kind::Unit: st.add(name, sig, by_sort[3]); break;
      default: break;  // compound results: stage 3 reports the missing stub
    }
  }
  return st;
}

int cmd_typecheck(const std::string& proc_file, const std::string& protocol, const std::string& role,
                  std::size_t depth, bool traces, bool as_json) {
  frontend::ProcFile pf = load_process(proc_file, as_json);
  GlobalType g = load_protocol(protocol, as_json);
  if (auto l = project(g, Role{role}); !l) fail({projection_diag(protocol, l.error())}, protocol, as_json);
  ConformanceOptions opts;
  opts.depth = depth;
  opts.stages = traces ? 3 : 2;
  auto rep = check_conformance(pf.proc, g, Role{role}, default_stubs(pf.externs), opts);
  if (as_json) {
    std::cout << frontend::to_json(rep).dump(2) << "\n";
  } else if (rep.ok) {
    std::cout << "stage 1 ok: " << frontend::pretty_local(*rep.synthesized) << "\n";
    std::cout << "stage 2 ok: equal to the projection onto " << role << " up to depth " << depth << "\n";
    if (traces)
      std::cout << "stage 3 ok: " << rep.process_traces << " process traces embed in global traces of depth "
                << rep.global_depth << "\n";
  }
  if (!rep.ok) {
    Diagnostic d = diag(proc_file, "stage " + std::to_string(rep.failed_stage) + ": " + rep.message, rep.rule);
    if (!as_json) std::cerr << frontend::to_string(d) << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_run(const std::string& proc_file, const std::string& self, const std::string& config_file,
            const std::vector<std::string>& libs, std::size_t max_actions, int timeout_ms, bool as_json) {
  frontend::ProcFile pf = load_process(proc_file, as_json);
  auto cfg = runtime::parse_conn_config(read_file(config_file));
  if (!cfg) fail({diag(config_file, cfg.error().message)}, config_file, as_json, kUsage);
  if (!self.empty() && cfg->self.name != self)
    fail({diag(config_file, "config is for " + cfg->self.name + ", not " + self)}, config_file, as_json, kUsage);
  if (cfg->protocol.empty()) fail({diag(config_file, "config names no protocol")}, config_file, as_json, kUsage);
  const auto proto_path = (std::filesystem::path(config_file).parent_path() / cfg->protocol).string();
  GlobalType g = load_protocol(proto_path, as_json);

  runtime::HostRegistry reg = runtime::builtin_registry();
  for (const auto& lib : libs)
    if (auto st = runtime::load_extern_library(lib, reg); !st) fail({diag(lib, st.error().message)}, lib, as_json);

  runtime::Endpoint ep{cfg->self, pf.proc, pf.externs, label_table(g)};
  auto ch = runtime::connect_tcp(cfg->self, cfg->peers);
  if (!ch) fail({diag(config_file, "ConnectFailed: " + ch.error().message)}, config_file, as_json);
  runtime::RunOptions opts;
  opts.max_actions = max_actions;
  opts.recv_timeout = std::chrono::milliseconds(timeout_ms);
  auto log = runtime::run_endpoint(ep, *ch, reg, opts);
  if (!log) fail({diag(proc_file, to_string(log.error().kind) + ": " + log.error().message)}, proc_file, as_json);

  if (as_json) {
    json j{{"ok", true}, {"self", cfg->self.name}, {"truncated", log->truncated}, {"actions", json::array()},
           {"calls", json::array()}};
    for (const auto& a : log->actions) j["actions"].push_back(frontend::to_json(a));
    for (const auto& c : log->calls)
      j["calls"].push_back({{"fn", c.fn}, {"arg", c.arg.to_string()}, {"result", c.result.to_string()}});
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& a : log->actions) std::cout << to_string(a) << "\n";
    if (log->truncated) std::cout << "(stopped after " << log->actions.size() << " actions)\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiparty session types: projection, bounded verification and typed endpoints"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string file, role, against, self, config;
  std::size_t depth = 8, tree_depth = 8, max_actions = 0;
  int timeout_ms = 10000;
  bool traces = false;
  std::vector<std::string> libs;

  auto* check = app.add_subcommand("check", "well-formedness and projectability of a protocol");
  check->add_option("file", file, "protocol (.gt)")->required();
  check->add_flag("--json", as_json);

  auto* proj = app.add_subcommand("project", "project a protocol onto a role (all roles when omitted)");
  proj->add_option("file", file, "protocol (.gt)")->required();
  proj->add_option("--role", role);
  proj->add_flag("--json", as_json);

  auto* sim = app.add_subcommand("simulate", "bounded global trace sets");
  sim->add_option("file", file, "protocol (.gt)")->required();
  sim->add_option("--depth", depth)->required();
  sim->add_flag("--json", as_json);

  auto* eq = app.add_subcommand("equiv", "bounded trace equivalence of a protocol and its projections");
  eq->add_option("file", file, "protocol (.gt)")->required();
  eq->add_option("--depth", depth)->required();
  eq->add_flag("--json", as_json);

  auto* snd = app.add_subcommand("soundness", "bounded step soundness and completeness");
  snd->add_option("file", file, "protocol (.gt)")->required();
  snd->add_option("--depth", depth)->required();
  snd->add_option("--tree-depth", tree_depth, "depth of compared local trees")->capture_default_str();
  snd->add_flag("--json", as_json);

  auto* tc = app.add_subcommand("typecheck", "check a process against a role of a protocol");
  tc->add_option("proc", file, "process (.zp)")->required();
  tc->add_option("--against", against, "protocol (.gt)")->required();
  tc->add_option("--role", role)->required();
  tc->add_option("--depth", depth)->capture_default_str();
  tc->add_flag("--traces", traces, "also check that process traces embed in global traces");
  tc->add_flag("--json", as_json);

  auto* run = app.add_subcommand("run", "run a process as a live TCP endpoint");
  run->add_option("proc", file, "process (.zp)")->required();
  run->add_option("--self", self);
  run->add_option("--config", config, "connection config (JSON)")->required();
  run->add_option("--extern", libs, "shared library registering host functions");
  run->add_option("--max-actions", max_actions, "stop after this many actions (0: no limit)");
  run->add_option("--timeout-ms", timeout_ms, "receive timeout")->capture_default_str();
  run->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, as_json);
    if (*proj) return cmd_project(file, role, as_json);
    if (*sim) return cmd_simulate(file, depth, as_json);
    if (*eq) return cmd_equiv(file, depth, as_json);
    if (*snd) return cmd_soundness(file, depth, tree_depth, as_json);
    if (*tc) return cmd_typecheck(file, against, role, depth, traces, as_json);
    if (*run) return cmd_run(file, self, config, libs, max_actions, timeout_ms, as_json);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}
