#pragma once

// Shared token machinery for the MiniPy and MiniJS lexers.

#include <string>
#include <vector>

#include "uasttaint/frontend.hpp"

namespace uast::detail {

enum class Tok {
  Name,
  Keyword,
  Number,
  Str,       // plain string literal, text holds the decoded value
  FStr,      // f-string / template literal, text holds the raw inner content
  Op,
  Newline,   // minipy only
  Indent,    // minipy only
  Dedent,    // minipy only
  End,
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
  // For FStr: column of the first content character, used to locate
  // embedded expressions.
  int contentCol = 1;
};

inline bool isIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool isIdentChar(char c) { return isIdentStart(c) || (c >= '0' && c <= '9'); }
inline bool isDigit(char c) { return c >= '0' && c <= '9'; }

}  // namespace uast::detail
