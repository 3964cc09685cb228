#pragma once

#include <string>
#include <vector>

#include "mpst/core/expected.hpp"
#include "mpst/core/types.hpp"
#include "mpst/process/ast.hpp"
#include "mpst/process/typing.hpp"

namespace mpst::frontend {

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
  std::string rule;  // typing or projection rule, when one applies
};

std::string to_string(const Diagnostic& d);

using Diagnostics = std::vector<Diagnostic>;

Expected<Sort, Diagnostics> parse_sort(const std::string& text);
Expected<GlobalType, Diagnostics> parse_global(const std::string& text);
Expected<LocalType, Diagnostics> parse_local(const std::string& text);
Expected<Expr, Diagnostics> parse_expr(const std::string& text);
Expected<Proc, Diagnostics> parse_proc(const std::string& text);

// A process source file: `extern f : S -> S;` declarations, then a process.
struct ProcFile {
  ExternSigs externs;
  Proc proc;
};
Expected<ProcFile, Diagnostics> parse_proc_file(const std::string& text);

std::string pretty_sort(const Sort& s);
std::string pretty_global(const GlobalType& g);
std::string pretty_local(const LocalType& l);
std::string pretty_tree(const LocalTree& t);
std::string pretty_expr(const Expr& e);
std::string pretty_proc(const Proc& p);
std::string pretty_proc_file(const ProcFile& f);

// Name printed for the binder at nesting depth d: X, Y, Z, W, then X4, X5...
std::string binder_name(std::size_t d);

}  // namespace mpst::frontend
