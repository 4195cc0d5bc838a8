#include "lexer.hpp"

#include <cctype>

namespace geocheck::lex {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

Decoded decode(std::string_view s, std::size_t i) {
  auto b = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> char32_t {
    return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) & 0x3F : 0;
  };
  if (b < 0x80) return {b, 1};
  if ((b >> 5) == 0x6) return {static_cast<char32_t>(((b & 0x1F) << 6) | cont(1)), 2};
  if ((b >> 4) == 0xE) return {static_cast<char32_t>(((b & 0x0F) << 12) | (cont(1) << 6) | cont(2)), 3};
  if ((b >> 3) == 0x1E)
    return {static_cast<char32_t>(((b & 0x07) << 18) | (cont(1) << 12) | (cont(2) << 6) | cont(3)), 4};
  throw Error(ErrorCode::SyntaxError, "invalid UTF-8 byte", Span{i, 1});
}

bool unicode_operator(char32_t cp, Tok& out) {
  switch (cp) {
    case U'∀': out = Tok::Forall; return true;
    case U'∃': out = Tok::Exists; return true;
    case U'∧': out = Tok::And; return true;
    case U'∨': out = Tok::Or; return true;
    case U'¬': out = Tok::Not; return true;
    case U'→': out = Tok::Implies; return true;
    case U'↔': out = Tok::Iff; return true;
    case U'≠': out = Tok::Ne; return true;
    case U'≤': out = Tok::Le; return true;
    case U'≥': out = Tok::Ge; return true;
    case U'∠': out = Tok::Angle; return true;
    case U'△': out = Tok::Triangle; return true;
    case U'∟': out = Tok::RightAngle; return true;
    case U'π': out = Tok::Pi; return true;
    case U'·': out = Tok::Bullet; return true;
    case U'•': out = Tok::Bullet; return true;
    case U'⟨': out = Tok::LAngle; return true;
    case U'⟩': out = Tok::RAngle; return true;
    default: return false;
  }
}

bool ident_start(char32_t cp) {
  if (cp < 0x80) return std::isalpha(static_cast<int>(cp)) || cp == '_';
  Tok ignored;
  return !unicode_operator(cp, ignored) && cp != 0xA0;
}

bool ident_continue(char32_t cp) {
  if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) || cp == '_' || cp == '\'';
  return ident_start(cp);
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 0;
  bool at_line_start = true;

  auto advance = [&](std::size_t bytes, std::size_t cps) {
    i += bytes;
    col += cps;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 0;
      at_line_start = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1, 1);
      continue;
    }
    if (text.compare(i, 2, "--") == 0 || c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (text.compare(i, 2, "/-") == 0) {
      std::size_t start = i;
      auto end = text.find("-/", i + 2);
      if (end == std::string_view::npos)
        throw Error(ErrorCode::SyntaxError, "unterminated block comment", Span{start, text.size() - start});
      for (; i < end + 2; ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 0;
          at_line_start = true;
        } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
          ++col;
        }
      }
      continue;
    }

    Token t;
    t.line = line;
    t.col = col;
    t.line_start = at_line_start;
    at_line_start = false;
    std::size_t start = i;
    auto finish = [&](Tok kind, std::size_t bytes, std::size_t cps) {
      t.kind = kind;
      t.text = std::string(text.substr(start, bytes));
      t.span = Span{start, bytes};
      advance(bytes, cps);
      out.push_back(std::move(t));
    };

    auto d = decode(text, i);
    Tok op;
    if (d.cp >= 0x80 && unicode_operator(d.cp, op)) {
      finish(op, d.len, 1);
      continue;
    }
    if (ident_start(d.cp)) {
      std::size_t j = i;
      std::size_t cps = 0;
      while (j < text.size()) {
        auto e = decode(text, j);
        if (!ident_continue(e.cp)) break;
        j += e.len;
        ++cps;
      }
      // Real.pi, Real.sin, Real.cos are single names.
      if (text.substr(i, j - i) == "Real" && j + 1 < text.size() && text[j] == '.') {
        auto e = decode(text, j + 1);
        if (ident_start(e.cp)) {
          j += 1;
          ++cps;
          while (j < text.size()) {
            auto f = decode(text, j);
            if (!ident_continue(f.cp)) break;
            j += f.len;
            ++cps;
          }
        }
      }
      auto word = text.substr(i, j - i);
      Tok kind = Tok::Ident;
      if (word == "forall") kind = Tok::Forall;
      else if (word == "exists") kind = Tok::Exists;
      else if (word == "not") kind = Tok::Not;
      finish(kind, j - i, cps);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      finish(Tok::Number, j - i, j - i);
      continue;
    }

    auto starts = [&](std::string_view s) { return text.compare(i, s.size(), s) == 0; };
    if (starts(":=")) { finish(Tok::Assign, 2, 2); continue; }
    if (starts("<->")) { finish(Tok::Iff, 3, 3); continue; }
    if (starts("->")) { finish(Tok::Implies, 2, 2); continue; }
    if (starts("/\\")) { finish(Tok::And, 2, 2); continue; }
    if (starts("\\/")) { finish(Tok::Or, 2, 2); continue; }
    if (starts("!=")) { finish(Tok::Ne, 2, 2); continue; }
    if (starts("<=")) { finish(Tok::Le, 2, 2); continue; }
    if (starts(">=")) { finish(Tok::Ge, 2, 2); continue; }
    switch (c) {
      case '(': finish(Tok::LParen, 1, 1); continue;
      case ')': finish(Tok::RParen, 1, 1); continue;
      case '[': finish(Tok::LBracket, 1, 1); continue;
      case ']': finish(Tok::RBracket, 1, 1); continue;
      case ',': finish(Tok::Comma, 1, 1); continue;
      case ':': finish(Tok::Colon, 1, 1); continue;
      case '|': finish(Tok::Bar, 1, 1); continue;
      case '+': finish(Tok::Plus, 1, 1); continue;
      case '-': finish(Tok::Minus, 1, 1); continue;
      case '*': finish(Tok::Star, 1, 1); continue;
      case '/': finish(Tok::Slash, 1, 1); continue;
      case '=': finish(Tok::Eq, 1, 1); continue;
      case '<': finish(Tok::Lt, 1, 1); continue;
      case '>': finish(Tok::Gt, 1, 1); continue;
      case '~': finish(Tok::Not, 1, 1); continue;
      case '!': finish(Tok::Not, 1, 1); continue;
      case '@': finish(Tok::At, 1, 1); continue;
      case '.': {
        bool bullet = t.line_start && i + 1 < text.size() && (text[i + 1] == ' ' || text[i + 1] == '\t');
        finish(bullet ? Tok::Bullet : Tok::Dot, 1, 1);
        continue;
      }
      default: break;
    }
    throw Error(ErrorCode::SyntaxError, "unexpected character '" + std::string(text.substr(i, d.len)) + "'",
                Span{i, d.len});
  }
  Token end;
  end.kind = Tok::End;
  end.span = Span{text.size(), 0};
  end.line = line + 1;
  end.col = 0;
  end.line_start = true;
  out.push_back(end);
  return out;
}

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LAngle: return "'⟨'";
    case Tok::RAngle: return "'⟩'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'≠'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'≤'";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'≥'";
    case Tok::And: return "'∧'";
    case Tok::Or: return "'∨'";
    case Tok::Not: return "'¬'";
    case Tok::Implies: return "'→'";
    case Tok::Iff: return "'↔'";
    case Tok::Forall: return "'∀'";
    case Tok::Exists: return "'∃'";
    case Tok::Angle: return "'∠'";
    case Tok::Triangle: return "'△'";
    case Tok::RightAngle: return "'∟'";
    case Tok::Pi: return "'π'";
    case Tok::Bullet: return "'·'";
    case Tok::At: return "'@'";
    case Tok::End: return "end of input";
  }
  return "?";
}

}  // namespace geocheck::lex
