#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geocheck/error.hpp"

namespace geocheck::lex {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LAngle,
  RAngle,
  Comma,
  Colon,
  Assign,
  Dot,
  Bar,
  Plus,
  Minus,
  Star,
  Slash,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Not,
  Implies,
  Iff,
  Forall,
  Exists,
  Angle,
  Triangle,
  RightAngle,
  Pi,
  Bullet,
  At,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
  std::size_t line = 0;
  /// Column in code points, 0-based.
  std::size_t col = 0;
  bool line_start = false;
};

/// Tokenizes `text`. Comments (`--`, `#` at line start, `/- -/`) are skipped.
/// The result always ends with an End token.
std::vector<Token> tokenize(std::string_view text);

std::string_view tok_name(Tok t);

}  // namespace geocheck::lex
