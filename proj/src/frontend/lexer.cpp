#include "lexer.hpp"

#include <cctype>

namespace mpst::frontend {

namespace {
const char* const kPuncts[] = {"->", "=>", "==", "!=", "<=", ">=", "&&", "||", "{", "}", "(", ")", "[", "]", ",",
                               ".",  ";",  ":",  "!",  "?",  "<",  ">",  "+",  "-",  "*", "/", "%", "|", "@", "="};
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      t.kind = Token::Kind::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.text = text.substr(i, j - i);
      t.kind = Token::Kind::Nat;
      if (j < text.size() && text[j] == 'i' &&
          (j + 1 >= text.size() || !(std::isalnum(static_cast<unsigned char>(text[j + 1])) || text[j + 1] == '_'))) {
        t.kind = Token::Kind::Int;
        ++j;
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      const std::string s(p);
      if (text.compare(i, s.size(), s) == 0) {
        t.kind = Token::Kind::Punct;
        t.text = s;
        advance(s.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) throw LexError{line, col, std::string("unexpected character '") + c + "'"};
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

}  // namespace mpst::frontend
