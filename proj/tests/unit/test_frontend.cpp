#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "json.hpp"
#include "mpst/frontend/json_out.hpp"
#include "mpst/runtime/endpoint.hpp"
#include "random_gen.hpp"

using namespace mpst;
using namespace mpst::testing;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::string& args) {
  std::string cmd = std::string(MPST_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string corpus_arg(const std::string& name) { return "'" + corpus_path(name) + "'"; }

frontend::Diagnostic first_error(const std::string& text) {
  auto r = frontend::parse_proc(text);
  REQUIRE_FALSE(r.has_value());
  return r.error().front();
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("mpst_frontend_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream o(p);
  o << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parsing the corpus") {
  CHECK(corpus_global("pipeline.gt") ==
        GlobalType::rec(GlobalType::msg(
            Role{"Alice"}, Role{"Bob"},
            {{Label{"l"}, Sort::nat(),
              GlobalType::msg(Role{"Bob"}, Role{"Carol"}, {{Label{"l"}, Sort::nat(), GlobalType::var(0)}})}})));
  CHECK(*frontend::parse_global("end") == GlobalType::end());
  CHECK(*frontend::parse_global("A -> B l(nat) . end") == *frontend::parse_global("A -> B { l(nat) . end }"));
  CHECK(*frontend::parse_proc("finish") == Proc::finish());
  CHECK(corpus_proc("ring_alice.zp").proc ==
        Proc::send(Role{"Bob"}, Label{"l"}, Expr::lit(Value::nat(1), Sort::nat()), Sort::nat(),
                   Proc::recv(Role{"Carol"}, {Proc::alt(Label{"l"}, "y", Sort::nat(), Proc::finish())})));
  GlobalType pp = corpus_global("ping_pong.gt");
  CHECK(pp.body().branches().size() == 2);
  CHECK(pp.body().branches()[0].sort == Sort::unit());
  CHECK(*frontend::parse_sort("pair(nat, seq(sum(int, bool)))") ==
        Sort::pair(Sort::nat(), Sort::seq(Sort::sum(Sort::integer(), Sort::boolean()))));
  for (const auto& f : corpus_files()) {
    if (f.ends_with(".gt")) CHECK_NOTHROW(corpus_global(f));
    if (f.ends_with(".zp")) CHECK_NOTHROW(corpus_proc(f));
  }
}

TEST_CASE("parse errors carry locations") {
  auto d = frontend::parse_global("A -> B {\n  l(nat) . end,\n  l(unit) . end }").error().front();
  CHECK(d.line == 3);
  CHECK(d.column == 3);
  CHECK(d.message.find("duplicate") != std::string::npos);

  auto unbound = frontend::parse_global("rec X . A -> B { l(nat) . continue Y }").error().front();
  CHECK(unbound.message.find("unbound") != std::string::npos);
  CHECK(unbound.column == 36);

  CHECK(first_error("select A { | default a(1 : nat); finish | default b(1 : nat); finish }").message ==
        "more than one default");
  CHECK(first_error("select A { | default a(1 : nat); finish | case true => b(1 : nat); finish }").message ==
        "case after default");
  CHECK(first_error("send A l(1 : nat)\nfinish").line == 2);
  CHECK_FALSE(frontend::parse_expr("99999999999999999999").has_value());
  CHECK_FALSE(frontend::parse_global("A -> B { }").has_value());
  auto s = frontend::to_string(d);
  CHECK(s.rfind("3:3: error: duplicate", 0) == 0);
}

TEST_CASE("printing") {
  CHECK(frontend::pretty_global(GlobalType::end()) == "end");
  CHECK(frontend::pretty_global(corpus_global("pipeline.gt")) ==
        "rec X . Alice -> Bob { l(nat) . Bob -> Carol { l(nat) . continue X } }");
  CHECK(frontend::pretty_local(*project(corpus_global("two_buyer.gt"), Role{"B"})) ==
        "S ? { Quote(nat) . A ? { Propose(nat) . S ! { Accept(nat) . S ? { Date(nat) . end }, Reject(unit) . end } } }");
  CHECK(frontend::pretty_tree(local_tree_expand(local_of("rec X . A ! { l(nat) . continue X }"), 2)) ==
        "A ! { l(nat) . A ! { l(nat) . ... } }");
  CHECK(frontend::pretty_expr(*frontend::parse_expr("(1 + 2) * 3 - -4i")) == "(1 + 2) * 3 - -4i");
  CHECK(frontend::binder_name(0) == "X");
  CHECK(frontend::binder_name(4) == "X4");
}

TEST_CASE("parse after pretty is the identity on the corpus") {
  for (const auto& f : corpus_files()) {
    if (f.ends_with(".gt")) {
      GlobalType g = corpus_global(f);
      CHECK(*frontend::parse_global(frontend::pretty_global(g)) == g);
      if (auto env = project_all(g))
        for (const auto& [r, l] : *env) CHECK(*frontend::parse_local(frontend::pretty_local(l)) == l);
    } else {
      auto pf = corpus_proc(f);
      auto back = frontend::parse_proc_file(frontend::pretty_proc_file(pf));
      REQUIRE_MESSAGE(back.has_value(), frontend::pretty_proc_file(pf));
      CHECK(back->proc == pf.proc);
      CHECK(back->externs == pf.externs);
    }
  }
}

TEST_CASE("parse after pretty is the identity on random terms") {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    GlobalType g = random_global(rng, GlobalGen{3, 2, 4});
    auto gp = frontend::parse_global(frontend::pretty_global(g));
    REQUIRE_MESSAGE(gp.has_value(), frontend::pretty_global(g));
    CHECK(*gp == g);
    LocalType l = random_local(rng, 4);
    CHECK(*frontend::parse_local(frontend::pretty_local(l)) == l);
    Proc p = random_proc(rng, ProcGen{});
    auto pp = frontend::parse_proc(frontend::pretty_proc(p));
    REQUIRE_MESSAGE(pp.has_value(), frontend::pretty_proc(p));
    CHECK(*pp == p);
    Sort s = random_sort(rng, 3);
    CHECK(*frontend::parse_sort(frontend::pretty_sort(s)) == s);
  }
}

TEST_CASE("printed names avoid capture") {
  // A free variable and nested binders must survive a round trip.
  GlobalType nested = GlobalType::rec(GlobalType::rec(GlobalType::msg(
      Role{"A"}, Role{"B"}, {{Label{"a"}, Sort::nat(), GlobalType::var(1)}, {Label{"b"}, Sort::nat(), GlobalType::var(0)}})));
  CHECK(*frontend::parse_global(frontend::pretty_global(nested)) == nested);
  Proc loops = Proc::loop(Proc::loop(Proc::send(Role{"A"}, Label{"l"}, Expr(), Sort::unit(), Proc::jump(1)), "X"), "X");
  CHECK(*frontend::parse_proc(frontend::pretty_proc(loops)) == loops);
}

TEST_CASE("JSON output") {
  auto j = frontend::to_json(Action{Dir::Send, Role{"A"}, Role{"B"}, Label{"l"}, Sort::nat()});
  CHECK(j == nlohmann::json{{"dir", "send"}, {"subj", "A"}, {"other", "B"}, {"label", "l"}, {"sort", "nat"}});
  auto r = check_trace_equiv(corpus_global("ring.gt"), 6);
  auto jr = frontend::to_json(*r);
  CHECK(jr["verdict"] == "Equal");
  CHECK(jr["depth"] == 6);
  CHECK(frontend::to_json(GlobalType::end())["kind"] == "end");
}

TEST_CASE("command line exit codes") {
  CHECK(cli("check " + corpus_arg("two_buyer.gt")).code == 0);
  CHECK(cli("check " + corpus_arg("gprime.gt")).code == 1);
  CHECK(cli("equiv " + corpus_arg("pipeline.gt") + " --depth 8").code == 0);
  CHECK(cli("equiv " + corpus_arg("pipeline.gt") + " --depth 8").out.find("Equal") == 0);
  CHECK(cli("project " + corpus_arg("gprime.gt") + " --role Carol").code == 1);
  auto proj = cli("project " + corpus_arg("ring.gt") + " --role Alice");
  CHECK(proj.code == 0);
  CHECK(proj.out == "Bob ! { l(nat) . Carol ? { l(nat) . end } }\n");
  CHECK(cli("typecheck " + corpus_arg("alice4.zp") + " --against " + corpus_arg("ping_pong.gt") +
            " --role Alice --depth 8")
            .code == 0);
  CHECK(cli("typecheck " + corpus_arg("buyer_b.zp") + " --against " + corpus_arg("two_buyer.gt") +
            " --role B --depth 4 --traces")
            .code == 0);
  CHECK(cli("typecheck " + corpus_arg("buyer_b.zp") + " --against " + corpus_arg("two_buyer.gt") + " --role A")
            .code == 1);
  CHECK(cli("soundness " + corpus_arg("ping_pong.gt") + " --depth 6").code == 0);
  CHECK(cli("simulate " + corpus_arg("ring.gt") + " --depth 6").code == 0);
  CHECK(cli("check /nonexistent.gt").code == 2);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("command line diagnostics and JSON") {
  std::string err_cmd = std::string(MPST_CLI_PATH) + " project " + corpus_arg("gprime.gt") + " --role Carol 2>&1";
  FILE* p = ::popen(err_cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  ::pclose(p);
  CHECK(out.find("MergeConflict") != std::string::npos);
  CHECK(out.find("proj-cont") != std::string::npos);

  auto sim = cli("simulate " + corpus_arg("ring.gt") + " --depth 6 --json");
  auto j = nlohmann::json::parse(sim.out);
  CHECK(j["completed"].size() == 1);
  CHECK(j["completed"][0][0]["dir"] == "send");
  // Byte-identical output for identical input.
  CHECK(cli("simulate " + corpus_arg("two_buyer.gt") + " --depth 7 --json").out ==
        cli("simulate " + corpus_arg("two_buyer.gt") + " --depth 7 --json").out);
  auto pj = cli("project " + corpus_arg("pipeline.gt") + " --json");
  CHECK(nlohmann::json::parse(pj.out).size() == 3);
}

TEST_CASE("command line endpoints over TCP") {
  fs::path dir = scratch_dir();
  auto ports = runtime::free_loopback_ports(2);
  REQUIRE(ports.size() == 2);
  std::string pa = std::to_string(ports[0]), pb = std::to_string(ports[1]);
  std::string proto = corpus_path("ring.gt");
  write_file(dir / "alice.json", R"({"self": "Alice", "protocol": ")" + proto + R"(", "peers": [
    {"role": "Bob", "mode": "listen", "port": )" + pa + R"(},
    {"role": "Carol", "mode": "listen", "port": )" + pa + "}]}");
  write_file(dir / "bob.json", R"({"self": "Bob", "protocol": ")" + proto + R"(", "peers": [
    {"role": "Alice", "mode": "connect", "port": )" + pa + R"(},
    {"role": "Carol", "mode": "listen", "port": )" + pb + "}]}");
  write_file(dir / "carol.json", R"({"self": "Carol", "protocol": ")" + proto + R"(", "peers": [
    {"role": "Alice", "mode": "connect", "port": )" + pa + R"(},
    {"role": "Bob", "mode": "connect", "port": )" + pb + "}]}");
  std::string cmd;
  for (const char* r : {"alice", "bob", "carol"}) {
    fs::path out = dir / (std::string(r) + ".out");
    cmd += "(" + std::string(MPST_CLI_PATH) + " run " + corpus_arg(std::string("ring_") + r + ".zp") +
           " --config '" + (dir / (std::string(r) + ".json")).string() + "' > '" + out.string() +
           "' 2>&1; echo $? > '" + out.string() + ".rc') & ";
  }
  cmd += "wait";
  REQUIRE(std::system(cmd.c_str()) == 0);
  for (const char* r : {"alice", "bob", "carol"}) {
    fs::path out = dir / (std::string(r) + ".out");
    CHECK_MESSAGE(read_file(out.string() + ".rc") == "0\n", read_file(out));
  }
  CHECK(read_file(dir / "alice.out") == "!Alice,Bob(l,1)\n?Alice,Carol(l,3)\n");

  // A lone endpoint calling a plugin function.
  write_file(dir / "solo.zp", "extern triple : nat -> nat;\ninteract triple(4) -> y : nat;\nfinish\n");
  write_file(dir / "solo.json", R"({"self": "Alice", "protocol": ")" + proto + R"(", "peers": []})");
  auto solo = cli("run '" + (dir / "solo.zp").string() + "' --config '" + (dir / "solo.json").string() +
                  "' --extern '" + MPST_PLUGIN_PATH + "' --json");
  CHECK(solo.code == 0);
  auto j = nlohmann::json::parse(solo.out);
  CHECK(j["calls"][0]["result"] == "12");
  fs::remove_all(dir);
}
