#include "geocheck/dsl/parser.hpp"

#include <algorithm>
#include <set>

#include "geocheck/theory/signature.hpp"
#include "lexer.hpp"

namespace geocheck {

using lex::Tok;
using lex::Token;

namespace {

// ---------------------------------------------------------------------------
// Surface syntax. Untyped; the elaborator assigns sorts.

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  enum class K { Ident, Num, Call, Binary, Unary, Quant, Abs, Angle, Tri, RightAngle, Pi, Paren, Chain };
  K k;
  std::string name;  // identifier, call head, operator
  Rational num{0};
  std::vector<ExprP> kids;
  std::vector<Binder> binders;
  bool exists = false;
  Span span;
};

ExprP mk(Expr::K k, Span span, std::string name = {}, std::vector<ExprP> kids = {}) {
  auto e = std::make_shared<Expr>();
  e->k = k;
  e->span = span;
  e->name = std::move(name);
  e->kids = std::move(kids);
  return e;
}

Span join(Span a, Span b) {
  auto end = std::max(a.offset + a.length, b.offset + b.length);
  auto start = std::min(a.offset, b.offset);
  return Span{start, end - start};
}

const std::set<std::string, std::less<>>& stop_words() {
  static const std::set<std::string, std::less<>> words{"as",   "with", "at",   "by",   "using",
                                                        "then", "else", "from", "in",   "generalizing"};
  return words;
}

const std::set<std::string, std::less<>>& known_foreign_tactics() {
  static const std::set<std::string, std::less<>> t{
      "rw",     "simp",    "calc",   "nlinarith", "linarith", "rcases", "ring_nf", "ring",    "norm_num",
      "field_simp", "exact", "apply", "intro", "intros", "obtain", "refine", "sorry",   "aesop",   "omega",
      "positivity", "push_neg", "rintro", "specialize", "unfold", "left", "right", "exfalso", "contradiction",
      "tauto",  "assumption", "trivial", "linear_combination", "polyrith", "simp_all", "nth_rewrite", "rwa"};
  return t;
}

// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : text_(text), toks_(lex::tokenize(text)), symbols_(symbols) {
    limit_ = toks_.size() - 1;
  }

  // --- token access ---------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < limit_ ? toks_[i] : end_token();
  }
  const Token& end_token() const {
    end_tok_.span = Span{toks_[limit_].span.offset, 0};
    return end_tok_;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool at_end() const { return pos_ >= limit_; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < limit_) ++pos_;
    return t;
  }
  const Token& expect(Tok k, std::string_view what = {}) {
    if (!at(k)) fail("expected " + std::string(what.empty() ? lex::tok_name(k) : what) + ", found " + describe(peek()));
    return next();
  }
  std::string expect_ident(std::string_view what) {
    if (!at(Tok::Ident)) fail("expected " + std::string(what) + ", found " + describe(peek()));
    return next().text;
  }
  std::string describe(const Token& t) const {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  Span here() const {
    const Token& t = peek();
    if (t.kind == Tok::End) {
      // Point at the last character of the input rather than past it.
      if (text_.empty()) return Span{0, 0};
      std::size_t off = pos_ > 0 ? toks_[pos_ - 1].span.offset : text_.size() - 1;
      return Span{off, pos_ > 0 ? toks_[pos_ - 1].span.length : 1};
    }
    return t.span;
  }
  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) const {
    throw Error(code, msg, here());
  }
  [[noreturn]] static void fail_at(Span s, const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) {
    throw Error(code, msg, s);
  }

  // --- expressions ----------------------------------------------------------

  ExprP expr() { return iff(); }

  ExprP iff() {
    auto l = imp();
    if (at(Tok::Iff)) {
      next();
      auto r = imp();
      return mk(Expr::K::Binary, join(l->span, r->span), "↔", {l, r});
    }
    return l;
  }

  ExprP imp() {
    auto l = disj();
    if (at(Tok::Implies)) {
      next();
      auto r = imp();
      return mk(Expr::K::Binary, join(l->span, r->span), "→", {l, r});
    }
    return l;
  }

  ExprP disj() {
    std::vector<ExprP> ops{conj()};
    while (at(Tok::Or)) {
      next();
      ops.push_back(conj());
    }
    if (ops.size() == 1) return ops[0];
    return mk(Expr::K::Chain, join(ops.front()->span, ops.back()->span), "∨", ops);
  }

  ExprP conj() {
    std::vector<ExprP> ops{neg()};
    while (at(Tok::And)) {
      next();
      ops.push_back(neg());
    }
    if (ops.size() == 1) return ops[0];
    return mk(Expr::K::Chain, join(ops.front()->span, ops.back()->span), "∧", ops);
  }

  ExprP neg() {
    if (at(Tok::Not)) {
      Span s = next().span;
      auto e = neg();
      return mk(Expr::K::Unary, join(s, e->span), "¬", {e});
    }
    if (at(Tok::Forall) || at(Tok::Exists)) return quant();
    return cmp();
  }

  ExprP quant() {
    const Token& q = next();
    auto e = std::make_shared<Expr>();
    e->k = Expr::K::Quant;
    e->exists = q.kind == Tok::Exists;
    e->binders = binder_groups(true);
    expect(Tok::Comma, "',' after binders");
    auto body = expr();
    e->kids = {body};
    e->span = join(q.span, body->span);
    return e;
  }

  /// `(a b : Point) (L : Line)` or `a b : Point`. When `allow_bare` is false
  /// only parenthesized groups are accepted and an empty list is allowed.
  std::vector<Binder> binder_groups(bool allow_bare) {
    std::vector<Binder> out;
    auto group = [&](bool parenthesized) {
      std::vector<std::pair<std::string, Span>> names;
      while (at(Tok::Ident)) {
        names.emplace_back(peek().text, peek().span);
        next();
      }
      if (names.empty()) fail("expected a variable name");
      if (!at(Tok::Colon))
        fail_at(names.back().second, "binder '" + names.back().first + "' has no sort annotation",
                ErrorCode::SortAnnotationMissing);
      next();
      Span sort_span = here();
      std::string sort_text = expect_ident("a sort");
      auto sort = sort_from_name(sort_text);
      if (!sort || *sort == Sort::Prop) fail_at(sort_span, "unknown sort '" + sort_text + "'");
      if (parenthesized) expect(Tok::RParen);
      for (auto& [n, sp] : names) {
        for (const auto& b : out)
          if (b.name == n) fail_at(sp, "duplicate binder '" + n + "'");
        out.push_back({n, *sort});
      }
    };
    if (at(Tok::LParen)) {
      while (at(Tok::LParen)) {
        next();
        group(true);
      }
    } else if (allow_bare) {
      group(false);
    }
    return out;
  }

  ExprP cmp() {
    auto l = arith();
    static const std::pair<Tok, const char*> ops[] = {{Tok::Eq, "="}, {Tok::Ne, "≠"}, {Tok::Lt, "<"},
                                                     {Tok::Le, "≤"}, {Tok::Gt, ">"}, {Tok::Ge, "≥"}};
    for (auto [k, s] : ops) {
      if (at(k)) {
        next();
        auto r = arith();
        return mk(Expr::K::Binary, join(l->span, r->span), s, {l, r});
      }
    }
    return l;
  }

  ExprP arith() {
    auto l = product();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      std::string op = next().kind == Tok::Plus ? "+" : "-";
      auto r = product();
      l = mk(Expr::K::Binary, join(l->span, r->span), op, {l, r});
    }
    return l;
  }

  ExprP product() {
    auto l = unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      std::string op = next().kind == Tok::Star ? "*" : "/";
      auto r = unary();
      l = mk(Expr::K::Binary, join(l->span, r->span), op, {l, r});
    }
    return l;
  }

  ExprP unary() {
    if (at(Tok::Minus)) {
      Span s = next().span;
      auto e = unary();
      return mk(Expr::K::Unary, join(s, e->span), "-", {e});
    }
    return application();
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::Ident: return !stop_words().count(peek().text);
      case Tok::Number:
      case Tok::LParen:
      case Tok::Angle:
      case Tok::Triangle:
      case Tok::RightAngle:
      case Tok::Pi: return true;
      default: return false;
    }
  }

  ExprP application() {
    auto e = primary();
    bool juxtaposable = e->k == Expr::K::Ident;
    while (at(Tok::Dot) && peek(1).kind == Tok::Ident) {
      next();
      const Token& m = next();
      e = mk(Expr::K::Call, join(e->span, m.span), m.text, {e});
      juxtaposable = true;
    }
    if (!juxtaposable) return e;
    std::vector<ExprP> args = e->k == Expr::K::Call ? e->kids : std::vector<ExprP>{};
    bool any = false;
    while (atom_start()) {
      args.push_back(argument());
      any = true;
    }
    if (!any) return e;
    Span span = join(e->span, args.back()->span);
    return mk(Expr::K::Call, span, e->name, std::move(args));
  }

  /// A juxtaposed argument: an atom with optional `.method` suffixes.
  ExprP argument() {
    auto e = primary();
    while (at(Tok::Dot) && peek(1).kind == Tok::Ident) {
      next();
      const Token& m = next();
      e = mk(Expr::K::Call, join(e->span, m.span), m.text, {e});
    }
    return e;
  }

  ExprP primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        if (stop_words().count(t.text)) fail("unexpected keyword '" + t.text + "'");
        next();
        // f(a, b) call syntax requires the parenthesis to touch the name.
        if (at(Tok::LParen) && peek().span.offset == t.span.offset + t.span.length) {
          next();
          std::vector<ExprP> args;
          if (!at(Tok::RParen)) {
            args.push_back(expr());
            while (at(Tok::Comma)) {
              next();
              args.push_back(expr());
            }
          }
          Span close = expect(Tok::RParen).span;
          auto call = mk(Expr::K::Call, join(t.span, close), t.text, std::move(args));
          return call;
        }
        return mk(Expr::K::Ident, t.span, t.text);
      }
      case Tok::Number: {
        next();
        auto e = std::make_shared<Expr>();
        e->k = Expr::K::Num;
        e->span = t.span;
        auto dot = t.text.find('.');
        if (dot == std::string::npos) {
          e->num = Rational(std::stoll(t.text));
        } else {
          std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
          std::int64_t den = 1;
          for (std::size_t i = dot + 1; i < t.text.size(); ++i) den *= 10;
          e->num = Rational(std::stoll(digits), den);
        }
        return e;
      }
      case Tok::LParen: {
        next();
        auto inner = expr();
        Span close = expect(Tok::RParen).span;
        return mk(Expr::K::Paren, join(t.span, close), {}, {inner});
      }
      case Tok::Bar: {
        next();
        auto inner = arith();
        Span close = expect(Tok::Bar, "closing '|'").span;
        return mk(Expr::K::Abs, join(t.span, close), {}, {inner});
      }
      case Tok::Angle:
      case Tok::Triangle: {
        next();
        std::vector<ExprP> pts;
        Span last = t.span;
        for (int i = 0; i < 3; ++i) {
          if (i > 0) expect(Tok::Colon, "':' between vertices");
          if (!at(Tok::Ident)) fail("expected a point name");
          last = peek().span;
          pts.push_back(mk(Expr::K::Ident, last, next().text));
        }
        return mk(t.kind == Tok::Angle ? Expr::K::Angle : Expr::K::Tri, join(t.span, last), {}, std::move(pts));
      }
      case Tok::RightAngle: next(); return mk(Expr::K::RightAngle, t.span);
      case Tok::Pi: next(); return mk(Expr::K::Pi, t.span);
      default: fail("expected an expression, found " + describe(t));
    }
  }

  // --- elaboration ----------------------------------------------------------

  Scope scope;
  bool infer = false;

  static ExprP strip(ExprP e) {
    while (e->k == Expr::K::Paren) e = e->kids[0];
    return e;
  }

  std::optional<Sort> known_sort(const ExprP& raw) const {
    auto e = strip(raw);
    if (e->k == Expr::K::Ident) {
      auto it = scope.find(e->name);
      if (it != scope.end()) return it->second;
      if (e->name == "Real.pi" || e->name == "rightAngle") return Sort::Real;
      return std::nullopt;
    }
    return Sort::Real;
  }

  TermPtr var_ref(const std::string& name, Span span, std::optional<Sort> expected) {
    auto it = scope.find(name);
    if (it != scope.end()) {
      if (expected && *expected != it->second)
        fail_at(span, "'" + name + "' has sort " + std::string(sort_name(it->second)) + ", expected " +
                          std::string(sort_name(*expected)),
                ErrorCode::SortMismatch);
      return Term::var(name, it->second);
    }
    if (!infer) fail_at(span, "unknown identifier '" + name + "'", ErrorCode::UnknownSymbol);
    Sort s = expected.value_or(Sort::Point);
    scope[name] = s;
    return Term::var(name, s);
  }

  TermPtr term(const ExprP& raw, std::optional<Sort> expected) {
    auto e = strip(raw);
    auto real = [&](TermPtr t) {
      if (expected && *expected != Sort::Real)
        fail_at(e->span, "expected a " + std::string(sort_name(*expected)) + ", found a real-valued term",
                ErrorCode::SortMismatch);
      return t;
    };
    switch (e->k) {
      case Expr::K::Ident:
        if (!scope.count(e->name)) {
          if (e->name == "Real.pi") return real(term::pi());
          if (e->name == "rightAngle") return real(term::right_angle());
        }
        return var_ref(e->name, e->span, expected);
      case Expr::K::Num: return real(Term::num(e->num));
      case Expr::K::RightAngle: return real(term::right_angle());
      case Expr::K::Pi: return real(term::pi());
      case Expr::K::Angle:
        return real(term::angle(term(e->kids[0], Sort::Point), term(e->kids[1], Sort::Point),
                                term(e->kids[2], Sort::Point)));
      case Expr::K::Abs: {
        auto inner = strip(e->kids[0]);
        if (inner->k == Expr::K::Binary && inner->name == "-")
          return real(term::length(term(inner->kids[0], Sort::Point), term(inner->kids[1], Sort::Point)));
        fail_at(e->span, "|...| is only supported for segment lengths |(A-B)|", ErrorCode::UnsupportedSyntax);
      }
      case Expr::K::Unary:
        if (e->name == "-") return real(term::neg(term(e->kids[0], Sort::Real)));
        break;
      case Expr::K::Binary: {
        const std::string& op = e->name;
        if (op == "+" || op == "-" || op == "*" || op == "/") {
          auto l = term(e->kids[0], Sort::Real);
          auto r = term(e->kids[1], Sort::Real);
          if (op == "+") return real(term::add(l, r));
          if (op == "-") return real(term::sub(l, r));
          if (op == "*") return real(term::mul(l, r));
          return real(term::div(l, r));
        }
        break;
      }
      case Expr::K::Call: return real(call_term(e));
      default: break;
    }
    fail_at(e->span, "expected a term", ErrorCode::SyntaxError);
  }

  TermPtr call_term(const ExprP& e) {
    const std::string& h = e->name;
    auto arity = [&](std::size_t n) {
      if (e->kids.size() != n)
        fail_at(e->span, "'" + h + "' expects " + std::to_string(n) + " arguments, got " + std::to_string(e->kids.size()),
                ErrorCode::ArityMismatch);
    };
    auto pt = [&](std::size_t i) { return term(e->kids[i], Sort::Point); };
    if (h == "length" || h == "dist") {
      arity(2);
      return term::length(pt(0), pt(1));
    }
    if (h == "angle") {
      arity(3);
      return term::angle(pt(0), pt(1), pt(2));
    }
    if (h == "area") {
      if (e->kids.size() == 1) {
        auto tri = strip(e->kids[0]);
        if (tri->k != Expr::K::Tri) fail_at(e->span, ".area applies to a triangle (△ a:b:c)");
        return term::area(term(tri->kids[0], Sort::Point), term(tri->kids[1], Sort::Point),
                          term(tri->kids[2], Sort::Point));
      }
      arity(3);
      return term::area(pt(0), pt(1), pt(2));
    }
    auto real1 = [&](auto build) {
      arity(1);
      return build(term(e->kids[0], Sort::Real));
    };
    if (h == "Real.sin" || h == "sin") return real1([](TermPtr x) { return term::sin(x); });
    if (h == "Real.cos" || h == "cos") return real1([](TermPtr x) { return term::cos(x); });
    if (h == "neg") return real1([](TermPtr x) { return term::neg(x); });
    if (h == "add" || h == "sub" || h == "mul" || h == "div") {
      arity(2);
      auto l = term(e->kids[0], Sort::Real);
      auto r = term(e->kids[1], Sort::Real);
      if (h == "add") return term::add(l, r);
      if (h == "sub") return term::sub(l, r);
      if (h == "mul") return term::mul(l, r);
      return term::div(l, r);
    }
    if (h == "rightAngle" || h == "pi") {
      arity(0);
      return h == "pi" ? term::pi() : term::right_angle();
    }
    if (symbols_.predicate(h)) fail_at(e->span, "'" + h + "' is a proposition, expected a term", ErrorCode::SortMismatch);
    fail_at(e->span, "unknown function '" + h + "'", ErrorCode::UnknownSymbol);
  }

  FormulaPtr formula(const ExprP& raw) {
    auto e = strip(raw);
    switch (e->k) {
      case Expr::K::Ident:
        if (e->name == "True") return Formula::top();
        if (e->name == "False") return Formula::bottom();
        if (const auto* sorts = symbols_.predicate(e->name); sorts && sorts->empty())
          return Formula::pred(e->name, {});
        if (scope.count(e->name) || !symbols_.predicate(e->name))
          fail_at(e->span, "expected a proposition, found '" + e->name + "'",
                  scope.count(e->name) ? ErrorCode::SortMismatch : ErrorCode::UnknownSymbol);
        fail_at(e->span, "'" + e->name + "' expects arguments", ErrorCode::ArityMismatch);
      case Expr::K::Call: return pred_app(e);
      case Expr::K::Chain: {
        std::vector<FormulaPtr> ops;
        for (const auto& k : e->kids) ops.push_back(formula(k));
        return e->name == "∧" ? Formula::mk_and(std::move(ops)) : Formula::mk_or(std::move(ops));
      }
      case Expr::K::Unary:
        if (e->name == "¬") return Formula::mk_not(formula(e->kids[0]));
        break;
      case Expr::K::Quant: {
        Scope saved = scope;
        for (const auto& b : e->binders) scope[b.name] = b.sort;
        auto body = formula(e->kids[0]);
        // Names inferred inside the body are not visible outside it.
        Scope inferred = scope;
        scope = saved;
        for (const auto& [n, s] : inferred) {
          bool bound = std::any_of(e->binders.begin(), e->binders.end(), [&](const Binder& b) { return b.name == n; });
          if (!bound && !scope.count(n)) scope[n] = s;
        }
        return e->exists ? Formula::exists(e->binders, body) : Formula::forall(e->binders, body);
      }
      case Expr::K::Binary: {
        const std::string& op = e->name;
        if (op == "→") return Formula::implies(formula(e->kids[0]), formula(e->kids[1]));
        if (op == "↔") return Formula::iff(formula(e->kids[0]), formula(e->kids[1]));
        if (op == "=" || op == "≠") {
          auto s = known_sort(e->kids[0]);
          if (!s) s = known_sort(e->kids[1]);
          Sort sort = s.value_or(Sort::Point);
          FormulaPtr eq;
          if (sort == Sort::Real) {
            eq = Formula::cmp(CmpOp::Eq, term(e->kids[0], Sort::Real), term(e->kids[1], Sort::Real));
          } else {
            eq = mk_eq_object(term(e->kids[0], sort), term(e->kids[1], sort));
          }
          return op == "=" ? eq : Formula::mk_not(eq);
        }
        auto l = [&] { return term(e->kids[0], Sort::Real); };
        auto r = [&] { return term(e->kids[1], Sort::Real); };
        if (op == "<") return Formula::cmp(CmpOp::Lt, l(), r());
        if (op == "≤") return Formula::cmp(CmpOp::Le, l(), r());
        if (op == ">") {
          auto a = l();
          return Formula::cmp(CmpOp::Lt, r(), a);
        }
        if (op == "≥") {
          auto a = l();
          return Formula::cmp(CmpOp::Le, r(), a);
        }
        break;
      }
      default: break;
    }
    fail_at(e->span, "expected a proposition");
  }

  FormulaPtr pred_app(const ExprP& e) {
    const auto* sorts = symbols_.predicate(e->name);
    if (!sorts) {
      // Tolerate Lean's lowercase spellings of common definitions.
      if (e->name == "foot" || e->name == "triangle" || e->name == "midpoint") {
        std::string alt = e->name;
        alt[0] = static_cast<char>(alt[0] - 'a' + 'A');
        if (e->name == "midpoint") alt = "MidPoint";
        sorts = symbols_.predicate(alt);
        if (sorts) {
          auto copy = std::make_shared<Expr>(*e);
          copy->name = alt;
          return pred_app(copy);
        }
      }
      if (builtin_signature().is_function(e->name) || e->name == "dist" || e->name == "Real.sin" ||
          e->name == "Real.cos")
        fail_at(e->span, "'" + e->name + "' is a real-valued term, expected a proposition", ErrorCode::SortMismatch);
      fail_at(e->span, "unknown predicate '" + e->name + "'", ErrorCode::UnknownSymbol);
    }
    if (e->kids.size() != sorts->size())
      fail_at(e->span, "'" + e->name + "' expects " + std::to_string(sorts->size()) + " arguments, got " +
                           std::to_string(e->kids.size()),
              ErrorCode::ArityMismatch);
    std::vector<TermPtr> args;
    for (std::size_t i = 0; i < sorts->size(); ++i) args.push_back(term(e->kids[i], (*sorts)[i]));
    return Formula::pred(e->name, std::move(args));
  }

  FormulaPtr parse_formula_here() { return formula(expr()); }

  // --- tactics ----------------------------------------------------------------

  /// Index one past the last token of the item starting at `start` inside a
  /// block whose items sit at column `col`.
  std::size_t item_end(std::size_t start, std::size_t col, std::size_t end) const {
    std::size_t i = start + 1;
    while (i < end && !(toks_[i].line_start && toks_[i].col <= col)) ++i;
    return i;
  }

  TacticScript block(std::size_t begin, std::size_t end) {
    TacticScript script;
    if (begin >= end) return script;
    std::size_t col = toks_[begin].col;
    std::size_t i = begin;
    while (i < end) {
      const Token& t = toks_[i];
      if (i != begin && t.line_start && t.col < col) fail_at(t.span, "unexpected dedent");
      std::size_t stop = item_end(i, col, end);
      if (t.kind == Tok::Bullet) {
        if (script.nodes.empty()) fail_at(t.span, "bullet without a preceding branching tactic");
        auto& prev = script.nodes.back();
        bool branching = prev.kind == TacticNode::Kind::ByCases || prev.kind == TacticNode::Kind::SplitGoal ||
                         prev.kind == TacticNode::Kind::CasesHyp;
        if (!branching) fail_at(t.span, "bullet after a non-branching tactic");
        if (i + 1 >= stop) fail_at(t.span, "empty bullet");
        prev.branches.push_back(block(i + 1, stop));
        prev.span = join(prev.span, toks_[stop - 1].span);
      } else {
        script.nodes.push_back(tactic(i, stop));
      }
      i = stop;
    }
    return script;
  }

  std::vector<std::string> name_list(std::string_view what) {
    std::vector<std::string> names;
    if (at(Tok::LAngle))
      fail("paired ⟨object, hypothesis⟩ names are not supported; list object names only",
           ErrorCode::UnsupportedSyntax);
    while (at(Tok::Ident)) {
      names.push_back(next().text);
      if (at(Tok::Comma)) next();
    }
    if (names.empty()) fail("expected " + std::string(what));
    return names;
  }

  TermPtr apply_arg() {
    if (at(Tok::Ident)) {
      const Token& t = next();
      return var_ref(t.text, t.span, std::nullopt);
    }
    if (at(Tok::LParen)) return term(primary(), std::nullopt);
    fail("expected a rule argument, found " + describe(peek()));
  }

  TacticNode tactic(std::size_t begin, std::size_t end) {
    std::size_t saved_limit = limit_;
    std::size_t saved_pos = pos_;
    pos_ = begin;
    limit_ = end;
    TacticNode n;
    const Token& head = toks_[begin];
    n.span = join(head.span, toks_[end - 1].span);
    if (head.kind != Tok::Ident) fail_at(head.span, "expected a tactic, found '" + head.text + "'");
    next();
    const std::string& w = head.text;
    auto no_more = [&] {
      if (!at_end()) fail("unexpected " + describe(peek()) + " after " + w);
    };
    if (w == "euclid_intros") {
      n.kind = TacticNode::Kind::Intros;
      no_more();
    } else if (w == "euclid_finish") {
      n.kind = TacticNode::Kind::Finish;
      no_more();
    } else if (w == "euclid_apply") {
      n.kind = TacticNode::Kind::Apply;
      n.name = expect_ident("a rule name");
      while (!at_end() && !at_word("as") && !at_word("with")) n.args.push_back(apply_arg());
      if (at_word("with"))
        fail("'euclid_apply ... with' is not supported; pass the arguments positionally",
             ErrorCode::UnsupportedSyntax);
      if (at_word("as")) {
        next();
        n.witnesses = name_list("witness names after 'as'");
      }
      no_more();
    } else if (w == "euclid_assert") {
      n.kind = TacticNode::Kind::Assert;
      n.formula = parse_formula_here();
      no_more();
    } else if (w == "have") {
      n.kind = TacticNode::Kind::Have;
      if (at(Tok::Ident)) n.name = next().text;
      expect(Tok::Colon, "':' after have");
      n.formula = parse_formula_here();
      expect(Tok::Assign, "':= by'");
      if (!at_word("by")) fail("only tactic proofs ':= by ...' are supported", ErrorCode::UnsupportedSyntax);
      next();
      if (at_end()) fail("empty proof after 'by'");
      n.branches.push_back(block(pos_, end));
      pos_ = end;
    } else if (w == "by_cases") {
      n.kind = TacticNode::Kind::ByCases;
      if (at(Tok::Ident) && peek(1).kind == Tok::Colon) {
        n.name = next().text;
        next();
      }
      n.formula = parse_formula_here();
      no_more();
    } else if (w == "by_contra") {
      n.kind = TacticNode::Kind::ByContra;
      if (at(Tok::Ident)) n.name = next().text;
      no_more();
    } else if (w == "use") {
      n.kind = TacticNode::Kind::Use;
      n.term = apply_arg();
      no_more();
    } else if (w == "constructor" || w == "split_ands") {
      n.kind = TacticNode::Kind::SplitGoal;
      no_more();
    } else if (w == "cases") {
      n.kind = TacticNode::Kind::CasesHyp;
      n.name = expect_ident("a hypothesis name");
      if (at_word("with")) fail("'cases ... with' is not supported; use bullets", ErrorCode::UnsupportedSyntax);
      no_more();
    } else {
      std::string hint = known_foreign_tactics().count(w) ? " (only the declarative tactic set is accepted)" : "";
      fail_at(head.span, "unknown tactic '" + w + "'" + hint, ErrorCode::UnknownTactic);
    }
    pos_ = saved_pos;
    limit_ = saved_limit;
    return n;
  }

  // --- files ------------------------------------------------------------------

  std::size_t decl_end(std::size_t start) const {
    std::size_t i = start + 1;
    while (i < limit_ && !(toks_[i].line_start && toks_[i].col == 0)) ++i;
    return i;
  }

  static bool header_word(std::string_view w) {
    return w == "import" || w == "namespace" || w == "open" || w == "set_option" || w == "end" ||
           w == "section" || w == "noncomputable" || w == "variable" || w == "universe";
  }

  /// `∀ params, body` statement after the colon, optionally preceded by
  /// Lean-style binder groups before the colon.
  FormulaPtr statement(const std::vector<Binder>& pre) {
    for (const auto& b : pre) scope[b.name] = b.sort;
    auto f = parse_formula_here();
    for (const auto& b : pre) scope.erase(b.name);
    if (!pre.empty()) {
      if (f->is(Formula::Kind::Forall)) {
        std::vector<Binder> all = pre;
        all.insert(all.end(), f->binders().begin(), f->binders().end());
        return Formula::forall(all, f->body());
      }
      return Formula::forall(pre, f);
    }
    return f;
  }

  Decl declaration(std::size_t end, bool euclid) {
    limit_ = end;
    const Token& kw = next();
    Decl d;
    d.line = kw.line;
    d.span = join(kw.span, toks_[end - 1].span);
    scope.clear();
    infer = false;
    if (kw.text == "theorem" || kw.text == "lemma") {
      std::string name = expect_ident("a theorem name");
      auto pre = binder_groups(false);
      expect(Tok::Colon, "':' after the theorem name");
      auto stmt = statement(pre);
      TheoremEntry t{rule_from_statement(name, RuleKind::Theorem, stmt), std::nullopt};
      if (at(Tok::Assign)) {
        next();
        if (!at_word("by")) fail("expected 'by'");
        next();
        for (const auto& p : t.rule.params) scope[p.name] = p.sort;
        infer = true;
        t.proof = block(pos_, end);
        infer = false;
        pos_ = end;
      }
      if (!at_end()) fail("unexpected " + describe(peek()));
      d.value = std::move(t);
    } else if (kw.text == "axiom") {
      AxiomEntry a;
      a.name = expect_ident("an axiom name");
      a.euclid_tagged = euclid;
      std::optional<AxiomGroup> group;
      if (at_word("group")) {
        next();
        Span gs = here();
        std::string g = expect_ident("a group name");
        while (at(Tok::Minus) && peek(1).kind == Tok::Ident) {
          next();
          g += "-" + next().text;
        }
        group = axiom_group_from_name(g);
        if (!group) fail_at(gs, "unknown axiom group '" + g + "'");
      }
      auto pre = binder_groups(false);
      expect(Tok::Colon, "':' after the axiom name");
      auto stmt = statement(pre);
      if (!at_end()) fail("unexpected " + describe(peek()));
      a.rule = rule_from_statement(a.name, RuleKind::Inference, stmt);
      if (a.rule.conclusion->is(Formula::Kind::Exists)) a.rule.kind = RuleKind::Construction;
      a.group = group.value_or(a.rule.kind == RuleKind::Construction ? AxiomGroup::Construction
                                                                     : AxiomGroup::Extension);
      d.value = std::move(a);
    } else if (kw.text == "def" || kw.text == "abbrev") {
      DefinitionEntry def;
      def.name = expect_ident("a definition name");
      def.params = binder_groups(false);
      if (at(Tok::Colon)) {
        next();
        if (!at_word("Prop")) fail("definitions must have type Prop");
        next();
      }
      expect(Tok::Assign, "':='");
      for (const auto& p : def.params) scope[p.name] = p.sort;
      def.body = parse_formula_here();
      if (!at_end()) fail("unexpected " + describe(peek()));
      symbols_.add_definition(def);
      d.value = std::move(def);
    } else {
      fail_at(kw.span, "expected a declaration (theorem, axiom, def, abbrev), found '" + kw.text + "'");
    }
    return d;
  }

  Rule statement_header() {
    pos_ = 0;
    if (!at_word("theorem") && !at_word("lemma")) fail("expected 'theorem'");
    next();
    std::string name = expect_ident("a theorem name");
    auto pre = binder_groups(false);
    expect(Tok::Colon, "':' after the theorem name");
    auto stmt = statement(pre);
    if (!at_end() && !at(Tok::Assign)) fail("unexpected " + describe(peek()));
    return rule_from_statement(name, RuleKind::Theorem, stmt);
  }

  TacticScript proof_text() {
    pos_ = 0;
    if (at(Tok::Assign)) next();
    if (at_word("by")) next();
    infer = true;
    return block(pos_, limit_);
  }

  FormulaPtr whole_formula() {
    infer = true;
    auto f = parse_formula_here();
    if (!at_end()) fail("unexpected " + describe(peek()));
    return f;
  }

  TermPtr whole_term() {
    infer = true;
    auto t = term(expr(), std::nullopt);
    if (!at_end()) fail("unexpected " + describe(peek()));
    return t;
  }

  std::vector<Decl> file() {
    std::vector<Decl> out;
    std::set<std::string> names;
    bool euclid = false;
    const std::size_t full = limit_;
    pos_ = 0;
    while (pos_ < full) {
      limit_ = full;
      const Token& t = toks_[pos_];
      if (t.kind == Tok::At) {
        next();
        expect(Tok::LBracket);
        std::string attr = expect_ident("an attribute");
        expect(Tok::RBracket);
        if (attr != "euclid" && attr != "simp") fail_at(t.span, "unknown attribute '" + attr + "'");
        euclid = euclid || attr == "euclid";
        continue;
      }
      if (t.kind == Tok::Ident && header_word(t.text)) {
        std::size_t j = pos_ + 1;
        while (j < full && !toks_[j].line_start) ++j;
        pos_ = j;
        continue;
      }
      if (t.kind != Tok::Ident) fail_at(t.span, "expected a declaration, found '" + t.text + "'");
      std::size_t end = decl_end(pos_);
      out.push_back(declaration(end, euclid));
      euclid = false;
      const std::string& n = out.back().name();
      if (!names.insert(n).second)
        fail_at(out.back().span, "duplicate declaration '" + n + "'", ErrorCode::DuplicateName);
      pos_ = end;
    }
    limit_ = full;
    return out;
  }

 private:
  std::string_view text_;
  std::vector<Token> toks_;
  SymbolTable symbols_;
  mutable Token end_tok_;
  std::size_t pos_ = 0;
  std::size_t limit_ = 0;
};

}  // namespace

Rule parse_statement(std::string_view text, const SymbolTable& symbols) {
  Parser p(text, symbols);
  return p.statement_header();
}

TacticScript parse_proof(std::string_view text, const Scope& scope, const SymbolTable& symbols) {
  Parser p(text, symbols);
  p.scope = scope;
  return p.proof_text();
}

std::vector<Decl> parse_library(std::string_view text, const SymbolTable& symbols) {
  Parser p(text, symbols);
  return p.file();
}

FormulaPtr parse_formula(std::string_view text, const Scope& scope, const SymbolTable& symbols) {
  Parser p(text, symbols);
  p.scope = scope;
  return p.whole_formula();
}

TermPtr parse_term(std::string_view text, const Scope& scope, const SymbolTable& symbols) {
  Parser p(text, symbols);
  p.scope = scope;
  return p.whole_term();
}

Rule rule_from_statement(std::string name, RuleKind kind, const FormulaPtr& statement) {
  Rule r;
  r.name = std::move(name);
  r.kind = kind;
  FormulaPtr body = statement;
  if (statement->is(Formula::Kind::Forall)) {
    r.params = statement->binders();
    body = statement->body();
  }
  if (body->is(Formula::Kind::Implies)) {
    r.premise = body->sub(0);
    r.conclusion = body->sub(1);
  } else {
    r.premise = Formula::top();
    r.conclusion = body;
  }
  return r;
}

TermPtr resort(const TermPtr& t, const Scope& scope) {
  if (t->is_var()) {
    auto it = scope.find(t->name());
    if (it == scope.end() || it->second == t->sort()) return t;
    return Term::var(t->name(), it->second);
  }
  if (t->args().empty()) return t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args()) args.push_back(resort(a, scope));
  return Term::app(t->name(), std::move(args));
}

FormulaPtr resort(const FormulaPtr& f, const Scope& scope) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::True:
    case K::False: return f;
    case K::Pred: {
      std::vector<TermPtr> args;
      for (const auto& a : f->args()) args.push_back(resort(a, scope));
      if (is_equality_predicate(f->name()) && args.size() == 2 && args[0]->sort() == args[1]->sort() &&
          args[0]->sort() != Sort::Real)
        return mk_eq_object(args[0], args[1]);
      return Formula::pred(f->name(), std::move(args));
    }
    case K::Cmp: return Formula::cmp(f->op(), resort(f->args()[0], scope), resort(f->args()[1], scope));
    case K::Forall:
    case K::Exists: {
      Scope inner = scope;
      for (const auto& b : f->binders()) inner.erase(b.name);
      auto body = resort(f->body(), inner);
      return f->is(K::Forall) ? Formula::forall(f->binders(), body) : Formula::exists(f->binders(), body);
    }
    default: {
      std::vector<FormulaPtr> subs;
      for (const auto& g : f->subs()) subs.push_back(resort(g, scope));
      switch (f->kind()) {
        case K::Not: return Formula::mk_not(subs[0]);
        case K::And: return Formula::mk_and(std::move(subs));
        case K::Or: return Formula::mk_or(std::move(subs));
        case K::Implies: return Formula::implies(subs[0], subs[1]);
        default: return Formula::iff(subs[0], subs[1]);
      }
    }
  }
}

}  // namespace geocheck
