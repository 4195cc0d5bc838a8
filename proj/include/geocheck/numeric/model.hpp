#pragma once

// Coordinate semantics for the signature. Used as a test oracle and for
// statement sanity checks; it never contributes to a proof.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geocheck/core/logic.hpp"

namespace geocheck {

struct Vec2 {
  double x = 0, y = 0;
};

/// ax + by + c = 0 with a² + b² = 1.
struct LineCoef {
  double a = 1, b = 0, c = 0;
};

struct CircleCoef {
  double cx = 0, cy = 0, r = 1;
};

class Assignment {
 public:
  void set_point(const std::string& name, Vec2 p);
  /// Normalizes (a, b); throws Error(SyntaxError) when a = b = 0.
  void set_line(const std::string& name, LineCoef l);
  void set_line_through(const std::string& name, Vec2 p, Vec2 q);
  /// Throws when r <= 0.
  void set_circle(const std::string& name, CircleCoef c);
  void set_real(const std::string& name, double v);

  const Vec2& point(const std::string& name) const;
  const LineCoef& line(const std::string& name) const;
  const CircleCoef& circle(const std::string& name) const;
  double real(const std::string& name) const;

  bool has(const std::string& name) const;
  void erase(const std::string& name);

  const std::map<std::string, Vec2>& points() const { return points_; }
  const std::map<std::string, LineCoef>& lines() const { return lines_; }
  const std::map<std::string, CircleCoef>& circles() const { return circles_; }
  const std::map<std::string, double>& reals() const { return reals_; }

  /// Multiplies every coordinate and radius by `k`.
  Assignment scaled(double k) const;

 private:
  std::map<std::string, Vec2> points_;
  std::map<std::string, LineCoef> lines_;
  std::map<std::string, CircleCoef> circles_;
  std::map<std::string, double> reals_;
};

struct EvalConfig {
  /// Relative tolerance: |x - y| <= eps * max(1, |x|, |y|).
  double epsilon = 1e-9;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

/// Counters filled in by eval_formula when supplied.
struct EvalStats {
  /// sameSide or opposingSides asked about a point on the line.
  std::size_t degenerate = 0;
};

bool approx_eq(double x, double y, double eps);
bool approx_lt(double x, double y, double eps);
bool approx_le(double x, double y, double eps);

/// Throws UnassignedName, DegenerateAngle.
double eval_term(const Assignment& a, const TermPtr& t);

/// `f` must be free of definitions (UnexpandedDefinition otherwise). Its free
/// variables must be assigned. Quantifiers range over a finite domain built
/// from the assignment: the assigned objects plus points, lines and circles
/// derived from them (intersections, feet, midpoints, lines through pairs,
/// circumcircles, ...).
bool eval_formula(const Assignment& a, const FormulaPtr& f, const EvalConfig& cfg = {}, EvalStats* stats = nullptr);

/// Hand-written coordinate meaning of each shipped definition, independent
/// of its body. Arguments are names bound in `a`. Returns nullopt for names
/// without a direct semantics.
std::optional<bool> eval_definition_direct(const std::string& name, const std::vector<std::string>& args,
                                           const Assignment& a, const EvalConfig& cfg = {});

/// Names covered by eval_definition_direct.
std::vector<std::string> direct_definition_names();

}  // namespace geocheck
