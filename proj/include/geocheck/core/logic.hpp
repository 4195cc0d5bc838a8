#pragma once

// Sorted first-order syntax shared by every other module: terms, formulas,
// rules, substitution and the canonical form used for statement comparison.
//
// Nodes are immutable and shared through shared_ptr<const T>; every operation
// here is pure.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geocheck/error.hpp"

namespace geocheck {

enum class Sort : std::uint8_t { Point, Line, Circle, Real, Prop };

std::string_view sort_name(Sort sort);
std::optional<Sort> sort_from_name(std::string_view name);

using Rational = boost::rational<std::int64_t>;

/// "3", "-1/2".
std::string rational_to_string(const Rational& value);

class Term;
class Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Function symbols. Every function of the signature is Real-valued, so an
/// application always has sort Real.
namespace fn {
inline constexpr std::string_view kLength = "length";
inline constexpr std::string_view kAngle = "angle";
inline constexpr std::string_view kArea = "area";
inline constexpr std::string_view kRightAngle = "rightAngle";
inline constexpr std::string_view kPi = "pi";
inline constexpr std::string_view kSin = "sin";
inline constexpr std::string_view kCos = "cos";
inline constexpr std::string_view kAdd = "add";
inline constexpr std::string_view kSub = "sub";
inline constexpr std::string_view kMul = "mul";
inline constexpr std::string_view kDiv = "div";
inline constexpr std::string_view kNeg = "neg";
}  // namespace fn

/// Built-in equality predicates, one per object sort.
namespace pred {
inline constexpr std::string_view kEqPoint = "eqPoint";
inline constexpr std::string_view kEqLine = "eqLine";
inline constexpr std::string_view kEqCircle = "eqCircle";
}  // namespace pred

class Term {
 public:
  enum class Kind : std::uint8_t { Var, Num, App };

  static TermPtr var(std::string name, Sort sort);
  static TermPtr num(Rational value);
  static TermPtr app(std::string fn, std::vector<TermPtr> args);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  /// Variable name or function symbol.
  const std::string& name() const { return name_; }
  Sort sort() const { return sort_; }
  const Rational& value() const { return value_; }
  const std::vector<TermPtr>& args() const { return args_; }

 private:
  Term(Kind kind, std::string name, Sort sort, Rational value, std::vector<TermPtr> args)
      : kind_(kind), name_(std::move(name)), sort_(sort), value_(value), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  Sort sort_;
  Rational value_;
  std::vector<TermPtr> args_;
};

// Term builders. div and neg fold literal operands so that the rational
// literal 1/2 has a single representation.
namespace term {
TermPtr length(TermPtr a, TermPtr b);
TermPtr angle(TermPtr a, TermPtr b, TermPtr c);
TermPtr area(TermPtr a, TermPtr b, TermPtr c);
TermPtr right_angle();
TermPtr pi();
TermPtr sin(TermPtr x);
TermPtr cos(TermPtr x);
TermPtr add(TermPtr x, TermPtr y);
TermPtr sub(TermPtr x, TermPtr y);
TermPtr mul(TermPtr x, TermPtr y);
TermPtr div(TermPtr x, TermPtr y);
TermPtr neg(TermPtr x);
TermPtr num(std::int64_t n, std::int64_t d = 1);
}  // namespace term

enum class CmpOp : std::uint8_t { Eq, Lt, Le };

struct Binder {
  std::string name;
  Sort sort;

  bool operator==(const Binder&) const = default;
};

class Formula {
 public:
  enum class Kind : std::uint8_t { Pred, Cmp, Not, And, Or, Implies, Iff, Forall, Exists, True, False };

  static FormulaPtr pred(std::string name, std::vector<TermPtr> args);
  static FormulaPtr cmp(CmpOp op, TermPtr lhs, TermPtr rhs);
  static FormulaPtr mk_not(FormulaPtr f);
  /// n-ary; an empty list yields True, a singleton yields the element.
  static FormulaPtr mk_and(std::vector<FormulaPtr> fs);
  /// n-ary; an empty list yields False, a singleton yields the element.
  static FormulaPtr mk_or(std::vector<FormulaPtr> fs);
  static FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr iff(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr forall(std::vector<Binder> binders, FormulaPtr body);
  static FormulaPtr exists(std::vector<Binder> binders, FormulaPtr body);
  static FormulaPtr top();
  static FormulaPtr bottom();

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  bool is_quantifier() const { return kind_ == Kind::Forall || kind_ == Kind::Exists; }

  /// Predicate symbol (Pred only).
  const std::string& name() const { return name_; }
  /// Predicate arguments, or {lhs, rhs} for Cmp.
  const std::vector<TermPtr>& args() const { return args_; }
  CmpOp op() const { return op_; }
  /// Operands of Not/And/Or/Implies/Iff and the body of quantifiers (index 0).
  const std::vector<FormulaPtr>& subs() const { return subs_; }
  const FormulaPtr& sub(std::size_t i) const { return subs_.at(i); }
  const FormulaPtr& body() const { return subs_.at(0); }
  const std::vector<Binder>& binders() const { return binders_; }

 private:
  explicit Formula(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::string name_;
  std::vector<TermPtr> args_;
  CmpOp op_ = CmpOp::Eq;
  std::vector<FormulaPtr> subs_;
  std::vector<Binder> binders_;
};

/// Equality predicate for an object sort (Point/Line/Circle).
FormulaPtr mk_eq_object(TermPtr a, TermPtr b);
/// Names of the three object equality predicates.
bool is_equality_predicate(std::string_view name);

// Structural comparison. Total order; equal() ignores nothing.
int compare(const Term& a, const Term& b);
int compare(const Formula& a, const Formula& b);
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

enum class RuleKind : std::uint8_t { Construction, Inference, Definition, Theorem };

std::string_view rule_kind_name(RuleKind kind);

/// A named universally quantified implication `params. premise -> conclusion`.
struct Rule {
  std::string name;
  RuleKind kind = RuleKind::Theorem;
  std::vector<Binder> params;
  FormulaPtr premise;
  FormulaPtr conclusion;

  /// The closed statement `forall params, premise -> conclusion`.
  FormulaPtr statement() const;
};

bool equal(const Rule& a, const Rule& b);

using VarSet = std::set<std::pair<std::string, Sort>>;

VarSet free_vars(const TermPtr& t);
VarSet free_vars(const FormulaPtr& f);
/// Names only, including variables that occur with any sort.
std::set<std::string> free_var_names(const FormulaPtr& f);

/// Sort-preserving map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;

  /// Throws SortMismatch if `t` does not have sort `sort`.
  void bind(const std::string& name, Sort sort, TermPtr t);
  const TermPtr* find(const std::string& name) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, std::pair<Sort, TermPtr>>& entries() const { return map_; }
  void erase(const std::string& name) { map_.erase(name); }

  /// Free variable names of all terms in the range.
  std::set<std::string> range_names() const;

 private:
  std::map<std::string, std::pair<Sort, TermPtr>> map_;
};

/// Capture-avoiding simultaneous substitution.
TermPtr substitute(const TermPtr& t, const Substitution& s);
FormulaPtr substitute(const FormulaPtr& f, const Substitution& s);

/// `base`, or `base′`, `base′′`, ... whichever is first not in `used`.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

struct Instantiation {
  FormulaPtr premise;
  FormulaPtr conclusion;
};

/// Substitutes `args` for the rule parameters positionally.
/// Throws ArityMismatch or SortMismatch.
Instantiation instantiate_rule(const Rule& r, const std::vector<TermPtr>& args);

/// Top-level conjuncts, flattening nested And; True contributes nothing.
std::vector<FormulaPtr> conjuncts(const FormulaPtr& f);
/// Top-level disjuncts, flattening nested Or.
std::vector<FormulaPtr> disjuncts(const FormulaPtr& f);

/// Canonical form: binders renamed by depth, And/Or flattened and sorted,
/// double negations removed. Idempotent.
FormulaPtr normalize(const FormulaPtr& f);

}  // namespace geocheck
