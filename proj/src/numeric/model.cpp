#include "geocheck/numeric/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "geocheck/error.hpp"
#include "geocheck/theory/signature.hpp"
#include "numeric/geometry.hpp"

namespace geocheck {

using namespace geo;

void Assignment::set_point(const std::string& name, Vec2 p) { points_[name] = p; }

void Assignment::set_line(const std::string& name, LineCoef l) {
  if (l.a == 0 && l.b == 0) throw Error(ErrorCode::SyntaxError, "line '" + name + "' has a zero normal");
  lines_[name] = normalized(l);
}

void Assignment::set_line_through(const std::string& name, Vec2 p, Vec2 q) {
  auto l = line_through(p, q);
  if (!l) throw Error(ErrorCode::SyntaxError, "line '" + name + "' through coincident points");
  lines_[name] = *l;
}

void Assignment::set_circle(const std::string& name, CircleCoef c) {
  if (!(c.r > 0)) throw Error(ErrorCode::SyntaxError, "circle '" + name + "' needs a positive radius");
  circles_[name] = c;
}

void Assignment::set_real(const std::string& name, double v) { reals_[name] = v; }

namespace {
template <class M>
const auto& lookup(const M& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorCode::UnassignedName, "'" + name + "' has no value");
  return it->second;
}
}  // namespace

const Vec2& Assignment::point(const std::string& name) const { return lookup(points_, name); }
const LineCoef& Assignment::line(const std::string& name) const { return lookup(lines_, name); }
const CircleCoef& Assignment::circle(const std::string& name) const { return lookup(circles_, name); }
double Assignment::real(const std::string& name) const { return lookup(reals_, name); }

bool Assignment::has(const std::string& name) const {
  return points_.count(name) || lines_.count(name) || circles_.count(name) || reals_.count(name);
}

void Assignment::erase(const std::string& name) {
  points_.erase(name);
  lines_.erase(name);
  circles_.erase(name);
  reals_.erase(name);
}

Assignment Assignment::scaled(double k) const {
  Assignment out = *this;
  for (auto& [n, p] : out.points_) p = k * p;
  for (auto& [n, l] : out.lines_) l.c *= k;
  for (auto& [n, c] : out.circles_) c = {c.cx * k, c.cy * k, c.r * k};
  return out;
}

bool approx_eq(double x, double y, double eps) {
  return std::fabs(x - y) <= eps * std::max({1.0, std::fabs(x), std::fabs(y)});
}
bool approx_lt(double x, double y, double eps) { return x < y && !approx_eq(x, y, eps); }
bool approx_le(double x, double y, double eps) { return x < y || approx_eq(x, y, eps); }

namespace {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

bool same_point(Vec2 p, Vec2 q, double eps) { return dist(p, q) <= eps * std::max({1.0, mag(p), mag(q)}); }

bool on_line(const LineCoef& l, Vec2 p, double eps) {
  return std::fabs(side(l, p)) <= eps * std::max({1.0, mag(p), std::fabs(l.c)});
}

bool strictly_between(Vec2 x, Vec2 y, Vec2 z, double eps) {
  if (same_point(x, y, eps) || same_point(y, z, eps) || same_point(x, z, eps)) return false;
  Vec2 d = z - x, e = y - x;
  if (std::fabs(cross(e, d)) > eps * std::max(1.0, norm(e) * norm(d))) return false;
  double t = dot(e, d) / dot(d, d);
  return t > 0 && t < 1;
}

bool collinear(Vec2 a, Vec2 b, Vec2 c, double eps) {
  Vec2 u = b - a, v = c - a;
  return std::fabs(cross(u, v)) <= eps * std::max(1.0, norm(u) * norm(v));
}

bool same_line(const LineCoef& l, const LineCoef& m, double eps) {
  return std::fabs(l.a - m.a) <= eps && std::fabs(l.b - m.b) <= eps && approx_eq(l.c, m.c, eps);
}

bool same_circle(const CircleCoef& c, const CircleCoef& d, double eps) {
  return same_point(centre(c), centre(d), eps) && approx_eq(c.r, d.r, eps);
}

double angle_at(Vec2 a, Vec2 b, Vec2 c) {
  Vec2 u = a - b, v = c - b;
  double scale = std::max(1.0, mag(b));
  if (norm(u) <= 1e-12 * scale || norm(v) <= 1e-12 * scale)
    throw Error(ErrorCode::DegenerateAngle, "angle with a zero-length ray");
  return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

double triangle_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * std::fabs(cross(b - a, c - a)); }

// Finite stand-ins for the quantifier ranges.
struct Domain {
  std::vector<Vec2> points;
  std::vector<LineCoef> lines;
  std::vector<CircleCoef> circles;
  std::vector<double> reals;
};

void add_unique(std::vector<Vec2>& v, Vec2 p) {
  for (const auto& q : v)
    if (same_point(p, q, 1e-9)) return;
  v.push_back(p);
}
void add_unique(std::vector<LineCoef>& v, LineCoef l) {
  for (const auto& m : v)
    if (same_line(l, m, 1e-9)) return;
  v.push_back(l);
}
void add_unique(std::vector<CircleCoef>& v, CircleCoef c) {
  for (const auto& d : v)
    if (same_circle(c, d, 1e-9)) return;
  v.push_back(c);
}

Domain build_domain(const Assignment& a) {
  Domain d;
  std::vector<Vec2> base;
  for (const auto& [n, p] : a.points()) add_unique(base, p);
  std::vector<LineCoef> lines;
  for (const auto& [n, l] : a.lines()) lines.push_back(l);
  std::vector<CircleCoef> circles;
  for (const auto& [n, c] : a.circles()) circles.push_back(c);

  for (auto p : base) add_unique(d.points, p);
  for (const auto& c : circles) {
    add_unique(d.points, centre(c));
    for (double t : {0.7, 2.9, 4.4}) add_unique(d.points, {c.cx + c.r * std::cos(t), c.cy + c.r * std::sin(t)});
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) add_unique(d.points, midpoint(base[i], base[j]));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Vec2 o = anchor(lines[i]), u = direction(lines[i]);
    for (double t : {-1.37, 2.11}) add_unique(d.points, o + t * u);
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = intersect(lines[i], lines[j])) add_unique(d.points, *p);
    for (const auto& c : circles)
      for (auto p : intersect(lines[i], c)) add_unique(d.points, p);
    for (auto p : base) add_unique(d.points, foot(lines[i], p));
    for (const auto& c : circles) add_unique(d.points, foot(lines[i], centre(c)));
  }
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      for (auto p : intersect(circles[i], circles[j])) add_unique(d.points, p);

  for (const auto& l : lines) add_unique(d.lines, l);
  std::vector<Vec2> anchors = base;
  for (const auto& c : circles) add_unique(anchors, centre(c));
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j)
      if (auto l = line_through(anchors[i], anchors[j])) add_unique(d.lines, *l);

  for (const auto& c : circles) add_unique(d.circles, c);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j)
      if (i != j && !same_point(base[i], base[j], 1e-9))
        add_unique(d.circles, CircleCoef{base[i].x, base[i].y, dist(base[i], base[j])});
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j)
      for (std::size_t k = j + 1; k < base.size(); ++k)
        if (auto c = circumcircle(base[i], base[j], base[k])) add_unique(d.circles, *c);

  d.reals = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, M_PI / 6, M_PI / 2, M_PI};
  for (const auto& [n, v] : a.reals()) d.reals.push_back(v);
  return d;
}

class Evaluator {
 public:
  Evaluator(const Assignment& a, const EvalConfig& cfg, EvalStats* stats) : env_(a), cfg_(cfg), stats_(stats) {}

  double term(const TermPtr& t) {
    switch (t->kind()) {
      case Term::Kind::Num: return to_double(t->value());
      case Term::Kind::Var: return env_.real(t->name());
      case Term::Kind::App: break;
    }
    const auto& n = t->name();
    const auto& xs = t->args();
    auto pt = [&](std::size_t i) { return env_.point(xs[i]->name()); };
    if (n == fn::kLength) return dist(pt(0), pt(1));
    if (n == fn::kAngle) return angle_at(pt(0), pt(1), pt(2));
    if (n == fn::kArea) return triangle_area(pt(0), pt(1), pt(2));
    if (n == fn::kRightAngle) return M_PI / 2;
    if (n == fn::kPi) return M_PI;
    if (n == fn::kSin) return std::sin(term(xs[0]));
    if (n == fn::kCos) return std::cos(term(xs[0]));
    if (n == fn::kAdd) return term(xs[0]) + term(xs[1]);
    if (n == fn::kSub) return term(xs[0]) - term(xs[1]);
    if (n == fn::kMul) return term(xs[0]) * term(xs[1]);
    if (n == fn::kDiv) return term(xs[0]) / term(xs[1]);
    if (n == fn::kNeg) return -term(xs[0]);
    throw Error(ErrorCode::UnknownSymbol, "no numeric meaning for '" + n + "'");
  }

  bool formula(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind()) {
      case K::True: return true;
      case K::False: return false;
      case K::Not: return !formula(f->sub(0));
      case K::And:
        for (const auto& g : f->subs())
          if (!formula(g)) return false;
        return true;
      case K::Or:
        for (const auto& g : f->subs())
          if (formula(g)) return true;
        return false;
      case K::Implies: return !formula(f->sub(0)) || formula(f->sub(1));
      case K::Iff: return formula(f->sub(0)) == formula(f->sub(1));
      case K::Cmp: return compare(f);
      case K::Pred: return predicate(f);
      case K::Forall:
      case K::Exists: return quantifier(f);
    }
    return false;
  }

 private:
  bool compare(const FormulaPtr& f) {
    double x = term(f->args()[0]), y = term(f->args()[1]);
    switch (f->op()) {
      case CmpOp::Eq: return approx_eq(x, y, cfg_.epsilon);
      case CmpOp::Lt: return approx_lt(x, y, cfg_.epsilon);
      case CmpOp::Le: return approx_le(x, y, cfg_.epsilon);
    }
    return false;
  }

  bool predicate(const FormulaPtr& f) {
    const auto& n = f->name();
    const auto& xs = f->args();
    const double eps = cfg_.epsilon;
    auto pt = [&](std::size_t i) { return env_.point(xs[i]->name()); };
    auto ln = [&](std::size_t i) { return env_.line(xs[i]->name()); };
    auto cr = [&](std::size_t i) { return env_.circle(xs[i]->name()); };
    if (n == "onLine") return on_line(ln(1), pt(0), eps);
    if (n == "between") return strictly_between(pt(0), pt(1), pt(2), eps);
    if (n == "onCircle") return approx_eq(dist(pt(0), centre(cr(1))), cr(1).r, eps);
    if (n == "insideCircle") return approx_lt(dist(pt(0), centre(cr(1))), cr(1).r, eps);
    if (n == "outsideCircle") return approx_lt(cr(1).r, dist(pt(0), centre(cr(1))), eps);
    if (n == "isCentre") return same_point(pt(0), centre(cr(1)), eps);
    if (n == "sameSide" || n == "opposingSides") {
      auto l = ln(2);
      Vec2 p = pt(0), q = pt(1);
      if (on_line(l, p, eps) || on_line(l, q, eps)) {
        if (stats_) ++stats_->degenerate;
        return false;
      }
      bool same = (side(l, p) > 0) == (side(l, q) > 0);
      return n == "sameSide" ? same : !same;
    }
    if (n == "intersectsLine") {
      auto l = ln(0), m = ln(1);
      return std::fabs(l.a * m.b - l.b * m.a) > eps;
    }
    if (n == "intersectsCircle") {
      auto l = ln(0);
      auto c = cr(1);
      return approx_le(std::fabs(side(l, centre(c))), c.r, eps);
    }
    if (n == pred::kEqPoint) return same_point(pt(0), pt(1), eps);
    if (n == pred::kEqLine) return same_line(ln(0), ln(1), eps);
    if (n == pred::kEqCircle) return same_circle(cr(0), cr(1), eps);
    throw Error(ErrorCode::UnexpandedDefinition, "'" + n + "' must be expanded before numeric evaluation");
  }

  const Domain& domain() {
    if (!domain_) domain_ = build_domain(base_ ? *base_ : env_);
    return *domain_;
  }

  // Binds one variable, runs `k`, restores whatever the name held before.
  template <class F>
  bool with_binding(const Binder& b, F&& k) {
    const auto& d = domain();
    Assignment saved_slot;
    bool had = env_.has(b.name);
    if (had) save(b.name, saved_slot);
    env_.erase(b.name);
    bool stop = false;
    switch (b.sort) {
      case Sort::Point:
        for (std::size_t i = 0; i < d.points.size() && !stop; ++i) {
          env_.set_point(b.name, d.points[i]);
          stop = k();
        }
        break;
      case Sort::Line:
        for (std::size_t i = 0; i < d.lines.size() && !stop; ++i) {
          env_.set_line(b.name, d.lines[i]);
          stop = k();
        }
        break;
      case Sort::Circle:
        for (std::size_t i = 0; i < d.circles.size() && !stop; ++i) {
          env_.set_circle(b.name, d.circles[i]);
          stop = k();
        }
        break;
      case Sort::Real:
        for (std::size_t i = 0; i < d.reals.size() && !stop; ++i) {
          env_.set_real(b.name, d.reals[i]);
          stop = k();
        }
        break;
      case Sort::Prop: throw Error(ErrorCode::UnsupportedSyntax, "quantifier over Prop");
    }
    env_.erase(b.name);
    if (had) restore(b.name, saved_slot);
    return stop;
  }

  void save(const std::string& name, Assignment& slot) {
    if (env_.points().count(name)) slot.set_point(name, env_.point(name));
    if (env_.lines().count(name)) slot.set_line(name, env_.line(name));
    if (env_.circles().count(name)) slot.set_circle(name, env_.circle(name));
    if (env_.reals().count(name)) slot.set_real(name, env_.real(name));
  }
  void restore(const std::string& name, const Assignment& slot) {
    if (slot.points().count(name)) env_.set_point(name, slot.point(name));
    if (slot.lines().count(name)) env_.set_line(name, slot.line(name));
    if (slot.circles().count(name)) env_.set_circle(name, slot.circle(name));
    if (slot.reals().count(name)) env_.set_real(name, slot.real(name));
  }

  // ∀ xs, checks → rest  /  ∃ xs, checks ∧ rest. Each check is evaluated as
  // soon as the binders it mentions are bound, which prunes the product.
  bool quantifier(const FormulaPtr& f) {
    if (!base_) {
      base_snapshot_ = env_;
      base_ = &base_snapshot_;
    }
    const bool forall = f->is(Formula::Kind::Forall);
    const auto& bs = f->binders();
    std::vector<FormulaPtr> checks;
    FormulaPtr rest;
    if (forall) {
      if (f->body()->is(Formula::Kind::Implies)) {
        checks = conjuncts(f->body()->sub(0));
        rest = f->body()->sub(1);
      } else {
        rest = f->body();
      }
    } else {
      checks = conjuncts(f->body());
      rest = Formula::top();
    }
    std::vector<std::vector<FormulaPtr>> at_level(bs.size() + 1);
    for (const auto& c : checks) {
      auto names = free_var_names(c);
      std::size_t level = 0;
      for (std::size_t i = 0; i < bs.size(); ++i)
        if (names.count(bs[i].name)) level = i + 1;
      at_level[level].push_back(c);
    }
    // Level 0 checks do not depend on the binders.
    for (const auto& c : at_level[0])
      if (!formula(c)) return forall;

    // found == true means a witness (∃) or a counterexample (∀) was found.
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
      if (i == bs.size()) return forall ? !formula(rest) : formula(rest);
      return with_binding(bs[i], [&]() {
        for (const auto& c : at_level[i + 1])
          if (!formula(c)) return false;
        return search(i + 1);
      });
    };
    bool found = search(0);
    return forall ? !found : found;
  }

  Assignment env_;
  const EvalConfig& cfg_;
  EvalStats* stats_;
  std::optional<Domain> domain_;
  Assignment base_snapshot_;
  const Assignment* base_ = nullptr;

};

}  // namespace

double eval_term(const Assignment& a, const TermPtr& t) {
  EvalConfig cfg;
  Evaluator ev(a, cfg, nullptr);
  return ev.term(t);
}

bool eval_formula(const Assignment& a, const FormulaPtr& f, const EvalConfig& cfg, EvalStats* stats) {
  Evaluator ev(a, cfg, stats);
  return ev.formula(f);
}

// ---------------------------------------------------------------------------
// Direct semantics of the shipped definitions.

namespace {

struct Direct {
  const Assignment& a;
  const std::vector<std::string>& args;
  double eps;

  Vec2 p(std::size_t i) const { return a.point(args.at(i)); }
  LineCoef l(std::size_t i) const { return a.line(args.at(i)); }
  CircleCoef c(std::size_t i) const { return a.circle(args.at(i)); }

  bool eq(Vec2 u, Vec2 v) const { return same_point(u, v, eps); }
  bool coll(Vec2 x, Vec2 y, Vec2 z) const { return eq(x, y) || eq(x, z) || eq(y, z) || collinear(x, y, z, eps); }
  bool tri(Vec2 x, Vec2 y, Vec2 z) const { return !coll(x, y, z); }
  bool on(const LineCoef& m, Vec2 u) const { return on_line(m, u, eps); }
  bool oncirc(const CircleCoef& k, Vec2 u) const { return approx_eq(dist(u, centre(k)), k.r, eps); }
  bool right(Vec2 x, Vec2 v, Vec2 y) const {
    // cos of the angle at v is zero
    Vec2 u = x - v, w = y - v;
    return std::fabs(dot(u, w)) <= eps * (M_PI / 2) * norm(u) * norm(w) * 1.0000001;
  }
  bool acute(Vec2 x, Vec2 v, Vec2 y) const { return dot(x - v, y - v) > 0 && !right(x, v, y); }
  bool ratio_eq(double p1, double q1, double p2, double q2) const { return approx_eq(p1 * q2, p2 * q1, eps); }
};

using DirectFn = std::function<bool(const Direct&)>;

const std::map<std::string, std::pair<std::size_t, DirectFn>>& direct_table() {
  static const std::map<std::string, std::pair<std::size_t, DirectFn>> table = {
      {"Coll", {3, [](const Direct& d) { return d.coll(d.p(0), d.p(1), d.p(2)); }}},
      {"Triangle", {3, [](const Direct& d) { return d.tri(d.p(0), d.p(1), d.p(2)); }}},
      {"IsoTriangle",
       {3,
        [](const Direct& d) {
          return d.tri(d.p(0), d.p(1), d.p(2)) && approx_eq(dist(d.p(0), d.p(1)), dist(d.p(0), d.p(2)), d.eps);
        }}},
      {"RightTriangle",
       {3, [](const Direct& d) { return d.tri(d.p(0), d.p(1), d.p(2)) && d.right(d.p(1), d.p(0), d.p(2)); }}},
      {"MidPoint",
       {3, [](const Direct& d) { return !d.eq(d.p(0), d.p(2)) && d.eq(d.p(1), midpoint(d.p(0), d.p(2))); }}},
      {"Foot",
       {3,
        [](const Direct& d) {
          return !d.on(d.l(2), d.p(0)) && d.eq(d.p(1), foot(d.l(2), d.p(0)));
        }}},
      {"Cyclic",
       {4,
        [](const Direct& d) {
          std::vector<Vec2> s;
          for (std::size_t i = 0; i < 4; ++i) {
            bool dup = false;
            for (auto q : s) dup |= d.eq(q, d.p(i));
            if (!dup) s.push_back(d.p(i));
          }
          if (s.size() <= 2) return true;
          auto k = circumcircle(s[0], s[1], s[2]);
          if (!k || d.coll(s[0], s[1], s[2])) return false;
          return s.size() == 3 || d.oncirc(*k, s[3]);
        }}},
      {"Circumcentre",
       {4,
        [](const Direct& d) {
          if (!d.tri(d.p(1), d.p(2), d.p(3))) return false;
          auto k = circumcircle(d.p(1), d.p(2), d.p(3));
          return k && d.eq(d.p(0), centre(*k));
        }}},
      {"PerpLine",
       {2,
        [](const Direct& d) {
          auto l = d.l(0), m = d.l(1);
          return std::fabs(l.a * m.a + l.b * m.b) <= d.eps;
        }}},
      {"PerpBisector",
       {3,
        [](const Direct& d) {
          if (d.eq(d.p(0), d.p(1))) return false;
          auto m = midpoint(d.p(0), d.p(1));
          auto l = d.l(2);
          Vec2 u = direction(l);
          return d.on(l, m) && std::fabs(dot(u, d.p(1) - d.p(0))) <= d.eps * std::max(1.0, dist(d.p(0), d.p(1)));
        }}},
      {"SimilarTriangles",
       {6,
        [](const Direct& d) {
          Vec2 A = d.p(0), B = d.p(1), C = d.p(2), D = d.p(3), E = d.p(4), F = d.p(5);
          if (!d.tri(A, B, C) || !d.tri(D, E, F)) return false;
          double ab = dist(A, B), bc = dist(B, C), ca = dist(C, A);
          double de = dist(D, E), ef = dist(E, F), fd = dist(F, D);
          return d.ratio_eq(ab, de, bc, ef) && d.ratio_eq(bc, ef, ca, fd);
        }}},
      {"CongruentTriangles",
       {6,
        [](const Direct& d) {
          Vec2 A = d.p(0), B = d.p(1), C = d.p(2), D = d.p(3), E = d.p(4), F = d.p(5);
          if (!d.tri(A, B, C) || !d.tri(D, E, F)) return false;
          return approx_eq(dist(A, B), dist(D, E), d.eps) && approx_eq(dist(B, C), dist(E, F), d.eps) &&
                 approx_eq(dist(C, A), dist(F, D), d.eps);
        }}},
      {"distinctPointsOnLine",
       {3, [](const Direct& d) { return !d.eq(d.p(0), d.p(1)) && d.on(d.l(2), d.p(0)) && d.on(d.l(2), d.p(1)); }}},
      {"formTriangle",
       {6,
        [](const Direct& d) {
          Vec2 A = d.p(0), B = d.p(1), C = d.p(2);
          return d.tri(A, B, C) && d.on(d.l(3), A) && d.on(d.l(3), B) && d.on(d.l(4), B) && d.on(d.l(4), C) &&
                 d.on(d.l(5), C) && d.on(d.l(5), A);
        }}},
      {"formAcuteTriangle",
       {6,
        [](const Direct& d) {
          Vec2 A = d.p(0), B = d.p(1), C = d.p(2);
          return d.tri(A, B, C) && d.on(d.l(3), A) && d.on(d.l(3), B) && d.on(d.l(4), B) && d.on(d.l(4), C) &&
                 d.on(d.l(5), C) && d.on(d.l(5), A) && d.acute(B, A, C) && d.acute(A, B, C) && d.acute(A, C, B);
        }}},
      {"formQuadrilateral",
       {8,
        [](const Direct& d) {
          Vec2 v[4] = {d.p(0), d.p(1), d.p(2), d.p(3)};
          for (int i = 0; i < 4; ++i) {
            Vec2 x = v[i], y = v[(i + 1) % 4];
            if (d.eq(x, y) || !d.on(d.l(4 + i), x) || !d.on(d.l(4 + i), y)) return false;
          }
          // strictly convex, either orientation
          int pos = 0, neg = 0;
          for (int i = 0; i < 4; ++i) {
            Vec2 e1 = v[(i + 1) % 4] - v[i], e2 = v[(i + 2) % 4] - v[(i + 1) % 4];
            if (collinear(v[i], v[(i + 1) % 4], v[(i + 2) % 4], d.eps)) return false;
            (cross(e1, e2) > 0 ? pos : neg)++;
          }
          return pos == 4 || neg == 4;
        }}},
      {"TangentLineCircleAtPoint",
       {4,
        [](const Direct& d) {
          Vec2 P = d.p(0), O = d.p(1);
          auto L = d.l(2);
          auto k = d.c(3);
          return d.eq(O, centre(k)) && d.oncirc(k, P) && d.on(L, P) &&
                 approx_eq(std::fabs(side(L, centre(k))), k.r, d.eps);
        }}},
      {"CirclesIntersectAtTwoPoints",
       {4,
        [](const Direct& d) {
          auto k1 = d.c(0), k2 = d.c(1);
          Vec2 P = d.p(2), Q = d.p(3);
          return !same_circle(k1, k2, d.eps) && !d.eq(P, Q) && d.oncirc(k1, P) && d.oncirc(k2, P) &&
                 d.oncirc(k1, Q) && d.oncirc(k2, Q);
        }}},
      {"TwoLinesIntersectAtPoint",
       {3,
        [](const Direct& d) {
          auto l = d.l(0), m = d.l(1);
          return std::fabs(l.a * m.b - l.b * m.a) > d.eps && d.on(l, d.p(2)) && d.on(m, d.p(2));
        }}},
      {"RadicalAxis",
       {3,
        [](const Direct& d) {
          auto k1 = d.c(0), k2 = d.c(1);
          auto L = d.l(2);
          auto power_gap = [&](Vec2 x) {
            double p1 = dot(x - centre(k1), x - centre(k1)) - k1.r * k1.r;
            double p2 = dot(x - centre(k2), x - centre(k2)) - k2.r * k2.r;
            return std::pair{p1, p2};
          };
          Vec2 o = anchor(L), u = direction(L);
          for (double t : {-1.37, 2.11}) {
            auto [p1, p2] = power_gap(o + t * u);
            if (!approx_eq(p1, p2, d.eps * 10)) return false;
          }
          return true;
        }}},
      {"DistinctFourPoints",
       {4,
        [](const Direct& d) {
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
              if (d.eq(d.p(i), d.p(j))) return false;
          return true;
        }}},
      {"Parallel",
       {2,
        [](const Direct& d) {
          auto l = d.l(0), m = d.l(1);
          return std::fabs(l.a * m.b - l.b * m.a) <= d.eps;
        }}},
  };
  return table;
}

}  // namespace

std::optional<bool> eval_definition_direct(const std::string& name, const std::vector<std::string>& args,
                                           const Assignment& a, const EvalConfig& cfg) {
  const auto& t = direct_table();
  auto it = t.find(name);
  if (it == t.end()) return std::nullopt;
  if (args.size() != it->second.first)
    throw Error(ErrorCode::ArityMismatch, "'" + name + "' takes " + std::to_string(it->second.first) + " arguments");
  return it->second.second(Direct{a, args, cfg.epsilon});
}

std::vector<std::string> direct_definition_names() {
  std::vector<std::string> out;
  for (const auto& [n, v] : direct_table()) out.push_back(n);
  return out;
}

}  // namespace geocheck
