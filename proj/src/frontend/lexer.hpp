#pragma once

#include <string>
#include <vector>

namespace mpst::frontend {

struct Token {
  enum class Kind { Ident, Nat, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct LexError {
  std::size_t line;
  std::size_t column;
  std::string message;
};

// Identifiers, natural literals (`12`), int literals (`12i`), punctuation.
// Comments run from `//` or `#` to the end of the line.
std::vector<Token> lex(const std::string& text);

}  // namespace mpst::frontend
