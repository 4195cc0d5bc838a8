#include "geocheck/numeric/search.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "geocheck/error.hpp"
#include "numeric/geometry.hpp"

namespace geocheck {

using namespace geo;

namespace {

// Conjuncts of the hypotheses, with definition atoms also unfolded one level
// at a time so that both `MidPoint A M B` and `between A M B` are visible.
void collect_atoms(const FormulaPtr& f, const DefinitionRegistry& defs, std::vector<FormulaPtr>& out, int depth) {
  for (const auto& c : conjuncts(f)) {
    out.push_back(c);
    if (depth > 6 || !c->is(Formula::Kind::Pred)) continue;
    const auto* d = defs.find(c->name());
    if (!d || d->params.size() != c->args().size()) continue;
    Substitution s;
    for (std::size_t i = 0; i < d->params.size(); ++i) s.bind(d->params[i].name, d->params[i].sort, c->args()[i]);
    collect_atoms(substitute(d->body, s), defs, out, depth + 1);
  }
}

bool is_var(const TermPtr& t) { return t->is_var(); }

std::string name_of(const TermPtr& t) { return t->is_var() ? t->name() : std::string(); }

// A set of positions a point may take.
struct Locus {
  enum class Kind { Exact, Line, Circle, Segment, Ray, HalfLine } kind;
  Vec2 p{};         // exact point, segment/ray start
  Vec2 q{};         // segment end, ray through, half-line direction
  LineCoef line{};  // line, segment and ray carrier
  CircleCoef circle{};
  int priority = 0;
};

class Builder {
 public:
  Builder(const std::vector<Binder>& vars, const std::vector<FormulaPtr>& atoms, const DefinitionRegistry& defs,
          std::mt19937_64& rng)
      : vars_(vars), atoms_(atoms), rng_(rng) {
    // Each disjunction contributes the atoms of one randomly chosen branch.
    for (std::size_t i = 0; i < atoms_.size() && i < 512; ++i) {
      if (!atoms_[i]->is(Formula::Kind::Or)) continue;
      const auto& branches = atoms_[i]->subs();
      collect_atoms(branches[pick(branches.size())], defs, atoms_, 0);
    }
  }

  Assignment build() {
    std::set<std::string> pending;
    for (const auto& v : vars_) pending.insert(v.name);
    while (!pending.empty()) {
      // Most constrained variable first; ties keep declaration order.
      const Binder* best = nullptr;
      int best_score = 0;
      for (const auto& v : vars_) {
        if (!pending.count(v.name)) continue;
        int s = score(v);
        if (s > best_score) {
          best = &v;
          best_score = s;
        }
      }
      if (!best) {
        // Nothing is pinned down yet: start from the variable that the
        // fewest hypotheses could construct.
        std::vector<const Binder*> free;
        for (const auto& v : vars_)
          if (pending.count(v.name)) free.push_back(&v);
        if (uniform01() < 0.75) {
          best = free.front();
          std::size_t fewest = dependents(best->name);
          for (const auto* v : free)
            if (std::size_t k = dependents(v->name); k < fewest) {
              best = v;
              fewest = k;
            }
        } else {
          best = free[pick(free.size())];
        }
      }
      place(*best);
      pending.erase(best->name);
    }
    return a_;
  }

 private:
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double uniform01() { return uniform(0, 1); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  Vec2 random_point() { return {uniform(-5, 5), uniform(-5, 5)}; }

  bool placed(const TermPtr& t) const { return is_var(t) && a_.has(t->name()); }
  bool all_placed_except(const std::vector<TermPtr>& ts, const std::string& v) const {
    for (const auto& t : ts)
      if (!is_var(t) || (t->name() != v && !a_.has(t->name()))) return false;
    return true;
  }
  static bool mentions(const std::vector<TermPtr>& ts, const std::string& v) {
    return std::any_of(ts.begin(), ts.end(), [&](const TermPtr& t) { return is_var(t) && t->name() == v; });
  }
  Vec2 P(const TermPtr& t) const { return a_.point(t->name()); }

  // Number of hypothesis atoms in which `v` sits in a constructible slot.
  std::size_t dependents(const std::string& v) const {
    std::size_t k = 0;
    for (const auto& f : atoms_) {
      if (f->is(Formula::Kind::Cmp)) {
        k += free_var_names(f).count(v);
        continue;
      }
      if (!f->is(Formula::Kind::Pred)) continue;
      const auto& n = f->name();
      const auto& xs = f->args();
      auto at = [&](std::size_t i) { return i < xs.size() && name_of(xs[i]) == v; };
      if ((n == "MidPoint" || n == "Foot") && at(1)) ++k;
      if ((n == "Circumcentre" || n == "isCentre" || n == "onLine" || n == "onCircle") && at(0)) ++k;
      if ((n == "onLine" || n == "onCircle" || n == "isCentre") && at(1)) ++k;
      if ((n == "TangentLineCircleAtPoint" || n == "PerpBisector" || n == "RadicalAxis") && at(2)) ++k;
      if ((n == "between" || n == "Cyclic" || is_equality_predicate(n) || n == "PerpLine" || n == "Parallel") &&
          mentions(xs, v))
        ++k;
    }
    return k;
  }

  int score(const Binder& v) {
    switch (v.sort) {
      case Sort::Point: {
        auto loci = point_loci(v.name);
        int best = 0;
        for (const auto& l : loci) best = std::max(best, l.priority);
        if (loci.size() >= 2) best = std::max(best, 4);
        return best;
      }
      case Sort::Line: return line_score(v.name);
      case Sort::Circle: return circle_score(v.name);
      default: return 0;
    }
  }

  // Length atom `|(x-y)|` as a pair of names, or nullopt.
  static std::optional<std::pair<TermPtr, TermPtr>> length_args(const TermPtr& t) {
    if (t->kind() != Term::Kind::App || t->name() != fn::kLength) return std::nullopt;
    return std::pair{t->args()[0], t->args()[1]};
  }

  std::vector<Locus> point_loci(const std::string& v) {
    std::vector<Locus> out;
    for (const auto& f : atoms_) {
      if (f->is(Formula::Kind::Pred)) {
        const auto& n = f->name();
        const auto& xs = f->args();
        if (!mentions(xs, v) || !all_placed_except(xs, v)) continue;
        auto at = [&](std::size_t i) { return name_of(xs[i]) == v; };
        if (n == "MidPoint" && at(1) && !at(0) && !at(2)) {
          out.push_back({Locus::Kind::Exact, midpoint(P(xs[0]), P(xs[2]))});
          out.back().priority = 6;
        } else if (n == "Foot" && at(1) && !at(0)) {
          out.push_back({Locus::Kind::Exact, foot(a_.line(xs[2]->name()), P(xs[0]))});
          out.back().priority = 6;
        } else if (n == "Circumcentre" && at(0) && !at(1) && !at(2) && !at(3)) {
          if (auto c = circumcircle(P(xs[1]), P(xs[2]), P(xs[3]))) {
            out.push_back({Locus::Kind::Exact, centre(*c)});
            out.back().priority = 6;
          }
        } else if (n == "isCentre" && at(0)) {
          out.push_back({Locus::Kind::Exact, centre(a_.circle(xs[1]->name()))});
          out.back().priority = 6;
        } else if (n == pred::kEqPoint && (at(0) != at(1))) {
          out.push_back({Locus::Kind::Exact, P(at(0) ? xs[1] : xs[0])});
          out.back().priority = 6;
        } else if (n == "onLine" && at(0)) {
          Locus l{Locus::Kind::Line};
          l.line = a_.line(xs[1]->name());
          l.priority = 2;
          out.push_back(l);
        } else if (n == "onCircle" && at(0)) {
          Locus l{Locus::Kind::Circle};
          l.circle = a_.circle(xs[1]->name());
          l.priority = 2;
          out.push_back(l);
        } else if (n == "between" && std::count_if(xs.begin(), xs.end(), [&](auto& t) { return name_of(t) == v; }) == 1) {
          if (at(1)) {
            auto carrier = line_through(P(xs[0]), P(xs[2]));
            if (!carrier) continue;
            Locus l{Locus::Kind::Segment, P(xs[0]), P(xs[2]), *carrier};
            l.priority = 3;
            out.push_back(l);
          } else {
            // v at an end: beyond the middle point, away from the other end
            TermPtr far = at(0) ? xs[2] : xs[0];
            auto carrier = line_through(P(far), P(xs[1]));
            if (!carrier) continue;
            Locus l{Locus::Kind::Ray, P(far), P(xs[1]), *carrier};
            l.priority = 3;
            out.push_back(l);
          }
        } else if (n == "Cyclic") {
          std::vector<Vec2> others;
          for (const auto& t : xs)
            if (name_of(t) != v) others.push_back(P(t));
          if (others.size() == 3)
            if (auto c = circumcircle(others[0], others[1], others[2])) {
              Locus l{Locus::Kind::Circle};
              l.circle = *c;
              l.priority = 3;
              out.push_back(l);
            }
        }
      } else if (f->is(Formula::Kind::Cmp) && f->op() == CmpOp::Eq) {
        auto lhs = f->args()[0], rhs = f->args()[1];
        auto ll = length_args(lhs), rl = length_args(rhs);
        if (ll && rl) {
          std::vector<TermPtr> all = {ll->first, ll->second, rl->first, rl->second};
          if (!mentions(all, v) || !all_placed_except(all, v)) continue;
          auto other = [&](const std::pair<TermPtr, TermPtr>& pr) -> std::optional<TermPtr> {
            bool a0 = name_of(pr.first) == v, a1 = name_of(pr.second) == v;
            if (a0 == a1) return std::nullopt;
            return a0 ? pr.second : pr.first;
          };
          bool inl = mentions({ll->first, ll->second}, v), inr = mentions({rl->first, rl->second}, v);
          if (inl && inr) {
            auto p = other(*ll), q = other(*rl);
            if (!p || !q) continue;
            Vec2 x = P(*p), y = P(*q);
            if (dist(x, y) == 0) continue;
            Vec2 m = midpoint(x, y);
            auto carrier = line_through(m, m + perp(y - x));
            if (!carrier) continue;
            Locus l{Locus::Kind::Line};
            l.line = *carrier;
            l.priority = 3;
            out.push_back(l);
          } else {
            auto& with = inl ? *ll : *rl;
            auto& without = inl ? *rl : *ll;
            auto p = other(with);
            if (!p) continue;
            double r = dist(P(without.first), P(without.second));
            if (r <= 0) continue;
            Locus l{Locus::Kind::Circle};
            l.circle = {P(*p).x, P(*p).y, r};
            l.priority = 3;
            out.push_back(l);
          }
        } else if (lhs->kind() == Term::Kind::App && lhs->name() == fn::kAngle &&
                   rhs->kind() == Term::Kind::App && rhs->name() == fn::kRightAngle) {
          const auto& xs = lhs->args();
          if (!mentions(xs, v) || !all_placed_except(xs, v)) continue;
          auto at = [&](std::size_t i) { return name_of(xs[i]) == v; };
          if (at(1) && !at(0) && !at(2)) {
            Vec2 x = P(xs[0]), y = P(xs[2]);
            if (dist(x, y) == 0) continue;
            Locus l{Locus::Kind::Circle};
            l.circle = {midpoint(x, y).x, midpoint(x, y).y, dist(x, y) / 2};
            l.priority = 3;
            out.push_back(l);
          } else if ((at(0) || at(2)) && !at(1)) {
            Vec2 vertex = P(xs[1]), arm = P(at(0) ? xs[2] : xs[0]);
            if (dist(vertex, arm) == 0) continue;
            auto carrier = line_through(vertex, vertex + perp(arm - vertex));
            if (!carrier) continue;
            Locus l{Locus::Kind::Line};
            l.line = *carrier;
            l.priority = 3;
            out.push_back(l);
          }
        } else if (is_angle(lhs) && is_angle(rhs)) {
          // ∠v:B:C = ∠v:C:B puts v on the perpendicular bisector of BC.
          if (auto bis = base_angle_bisector(lhs->args(), rhs->args(), v)) out.push_back(*bis);
          // v at the end of one arm: a half-line from the vertex at the
          // angle fixed by the other side.
          for (int flip = 0; flip < 2; ++flip) {
            const auto& mine = (flip ? rhs : lhs)->args();
            const auto& theirs = (flip ? lhs : rhs)->args();
            if (mentions(theirs, v) || !mentions(mine, v)) continue;
            std::vector<TermPtr> all(mine.begin(), mine.end());
            all.insert(all.end(), theirs.begin(), theirs.end());
            if (!all_placed_except(all, v)) continue;
            auto at = [&](std::size_t i) { return name_of(mine[i]) == v; };
            if (at(1) || (at(0) && at(2))) continue;
            double theta = angle_at(P(theirs[0]), P(theirs[1]), P(theirs[2]));
            Vec2 vertex = P(mine[1]), arm = P(at(0) ? mine[2] : mine[0]);
            if (std::isnan(theta) || dist(vertex, arm) == 0) continue;
            Vec2 u = (1 / dist(vertex, arm)) * (arm - vertex);
            double t = uniform01() < 0.5 ? theta : -theta;
            Vec2 w{u.x * std::cos(t) - u.y * std::sin(t), u.x * std::sin(t) + u.y * std::cos(t)};
            auto carrier = line_through(vertex, vertex + w);
            if (!carrier) continue;
            Locus l{Locus::Kind::HalfLine, vertex, w, *carrier};
            l.priority = 3;
            out.push_back(l);
          }
        }
      }
    }
    return out;
  }

  std::optional<Locus> base_angle_bisector(const std::vector<TermPtr>& x, const std::vector<TermPtr>& y,
                                           const std::string& v) const {
    auto arm_end = [&](const std::vector<TermPtr>& a) -> std::optional<std::string> {
      if (name_of(a[0]) == v) return name_of(a[2]);
      if (name_of(a[2]) == v) return name_of(a[0]);
      return std::nullopt;
    };
    auto ex = arm_end(x), ey = arm_end(y);
    if (!ex || !ey) return std::nullopt;
    std::string bx = name_of(x[1]), by = name_of(y[1]);
    if (bx.empty() || by.empty() || bx == v || by == v || *ex != by || *ey != bx || bx == by) return std::nullopt;
    if (!a_.has(bx) || !a_.has(by)) return std::nullopt;
    Vec2 p = a_.point(bx), q = a_.point(by);
    if (dist(p, q) == 0) return std::nullopt;
    auto carrier = line_through(midpoint(p, q), midpoint(p, q) + perp(q - p));
    if (!carrier) return std::nullopt;
    Locus l{Locus::Kind::Line};
    l.line = *carrier;
    l.priority = 3;
    return l;
  }

  static bool is_angle(const TermPtr& t) { return t->kind() == Term::Kind::App && t->name() == fn::kAngle; }

  static double angle_at(Vec2 a, Vec2 o, Vec2 b) {
    Vec2 x = a - o, y = b - o;
    if (norm(x) == 0 || norm(y) == 0) return std::nan("");
    return std::atan2(std::fabs(cross(x, y)), dot(x, y));
  }

  Vec2 sample_on(const Locus& l) {
    switch (l.kind) {
      case Locus::Kind::Exact: return l.p;
      case Locus::Kind::Line: return anchor(l.line) + uniform(-6, 6) * direction(l.line);
      case Locus::Kind::Circle: {
        double t = uniform(0, 2 * M_PI);
        return {l.circle.cx + l.circle.r * std::cos(t), l.circle.cy + l.circle.r * std::sin(t)};
      }
      case Locus::Kind::Segment: return l.p + uniform(0.1, 0.9) * (l.q - l.p);
      case Locus::Kind::Ray: return l.q + uniform(0.2, 1.5) * (l.q - l.p);
      case Locus::Kind::HalfLine: return l.p + uniform(0.5, 6) * l.q;
    }
    return random_point();
  }

  static bool on_locus(const Locus& l, Vec2 x) {
    constexpr double tol = 1e-7;
    switch (l.kind) {
      case Locus::Kind::Exact: return dist(l.p, x) < tol;
      case Locus::Kind::Line: return std::fabs(side(l.line, x)) < tol;
      case Locus::Kind::Circle: return std::fabs(dist(x, centre(l.circle)) - l.circle.r) < tol;
      case Locus::Kind::Segment:
      case Locus::Kind::Ray: {
        if (std::fabs(side(l.line, x)) > tol) return false;
        double t = dot(x - l.p, l.q - l.p) / dot(l.q - l.p, l.q - l.p);
        return l.kind == Locus::Kind::Segment ? (t > 0 && t < 1) : t > 1;
      }
      case Locus::Kind::HalfLine: return std::fabs(side(l.line, x)) < tol && dot(x - l.p, l.q) > tol;
    }
    return false;
  }

  static LineCoef carrier(const Locus& l) { return l.line; }

  std::vector<Vec2> meet(const Locus& a, const Locus& b) {
    auto is_circle = [](const Locus& l) { return l.kind == Locus::Kind::Circle; };
    std::vector<Vec2> cands;
    if (!is_circle(a) && !is_circle(b)) {
      if (auto p = intersect(carrier(a), carrier(b))) cands.push_back(*p);
    } else if (is_circle(a) && is_circle(b)) {
      cands = intersect(a.circle, b.circle);
    } else {
      const Locus& c = is_circle(a) ? a : b;
      const Locus& l = is_circle(a) ? b : a;
      cands = intersect(carrier(l), c.circle);
    }
    std::vector<Vec2> out;
    for (auto p : cands)
      if (on_locus(a, p) && on_locus(b, p)) out.push_back(p);
    return out;
  }

  void place_point(const std::string& v) {
    auto loci = point_loci(v);
    std::sort(loci.begin(), loci.end(), [](const Locus& x, const Locus& y) { return x.priority > y.priority; });
    if (loci.empty()) {
      a_.set_point(v, random_point());
      return;
    }
    if (loci.front().kind == Locus::Kind::Exact) {
      a_.set_point(v, loci.front().p);
      return;
    }
    if (loci.size() >= 2) {
      // Try pairs of loci in random order; fall back to a single locus.
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < loci.size(); ++i)
        for (std::size_t j = i + 1; j < loci.size(); ++j) pairs.push_back({i, j});
      std::shuffle(pairs.begin(), pairs.end(), rng_);
      for (auto [i, j] : pairs) {
        auto pts = meet(loci[i], loci[j]);
        if (!pts.empty()) {
          a_.set_point(v, pts[pick(pts.size())]);
          return;
        }
      }
    }
    a_.set_point(v, sample_on(loci[pick(loci.size())]));
  }

  int line_score(const std::string& v) {
    int best = 0, through = 0;
    for (const auto& f : atoms_) {
      if (!f->is(Formula::Kind::Pred)) continue;
      const auto& xs = f->args();
      if (!mentions(xs, v) || !all_placed_except(xs, v)) continue;
      const auto& n = f->name();
      if (n == "onLine" && name_of(xs[1]) == v) ++through;
      if (n == "TangentLineCircleAtPoint" || n == "PerpBisector" || n == "RadicalAxis") best = std::max(best, 6);
      if (n == "PerpLine" || n == "Parallel" || n == pred::kEqLine) best = std::max(best, 3);
    }
    if (through >= 2) best = std::max(best, 5);
    if (through == 1) best = std::max(best, 1);
    return best;
  }

  void place_line(const std::string& v) {
    std::vector<Vec2> through;
    std::optional<LineCoef> exact;
    std::optional<Vec2> direction_hint;
    for (const auto& f : atoms_) {
      if (!f->is(Formula::Kind::Pred)) continue;
      const auto& xs = f->args();
      if (!mentions(xs, v) || !all_placed_except(xs, v)) continue;
      const auto& n = f->name();
      if (n == "onLine" && name_of(xs[1]) == v) {
        Vec2 p = P(xs[0]);
        bool dup = false;
        for (auto q : through) dup |= dist(p, q) < 1e-9;
        if (!dup) through.push_back(p);
      } else if (n == "TangentLineCircleAtPoint" && name_of(xs[2]) == v) {
        Vec2 p = P(xs[0]);
        Vec2 o = centre(a_.circle(xs[3]->name()));
        if (auto l = line_through(p, p + perp(p - o))) exact = *l;
      } else if (n == "PerpBisector" && name_of(xs[2]) == v) {
        Vec2 x = P(xs[0]), y = P(xs[1]);
        if (auto l = line_through(midpoint(x, y), midpoint(x, y) + perp(y - x))) exact = *l;
      } else if (n == "RadicalAxis" && name_of(xs[2]) == v) {
        auto c1 = a_.circle(xs[0]->name()), c2 = a_.circle(xs[1]->name());
        // 2x·(O2 - O1) + |O1|² - |O2|² - r1² + r2² = 0
        Vec2 o1 = centre(c1), o2 = centre(c2);
        LineCoef l{2 * (o2.x - o1.x), 2 * (o2.y - o1.y), dot(o1, o1) - dot(o2, o2) - c1.r * c1.r + c2.r * c2.r};
        if (l.a != 0 || l.b != 0) exact = normalized(l);
      } else if (n == "PerpLine" || n == "Parallel") {
        const auto& other = name_of(xs[0]) == v ? xs[1] : xs[0];
        if (name_of(other) == v) continue;
        Vec2 u = geo::direction(a_.line(other->name()));
        direction_hint = n == "PerpLine" ? perp(u) : u;
      } else if (n == pred::kEqLine) {
        const auto& other = name_of(xs[0]) == v ? xs[1] : xs[0];
        if (name_of(other) != v) exact = a_.line(other->name());
      }
    }
    if (exact) {
      a_.set_line(v, *exact);
      return;
    }
    if (through.size() >= 2) {
      a_.set_line_through(v, through[0], through[1]);
      return;
    }
    Vec2 p = through.empty() ? random_point() : through[0];
    Vec2 u;
    if (direction_hint) {
      u = *direction_hint;
    } else {
      double t = uniform(0, M_PI);
      u = {std::cos(t), std::sin(t)};
    }
    a_.set_line_through(v, p, p + u);
  }

  int circle_score(const std::string& v) {
    int on = 0, centred = 0;
    for (const auto& f : atoms_) {
      if (!f->is(Formula::Kind::Pred)) continue;
      const auto& xs = f->args();
      if (!mentions(xs, v) || !all_placed_except(xs, v)) continue;
      if (f->name() == "onCircle") ++on;
      if (f->name() == "isCentre") ++centred;
    }
    if (centred && on) return 5;
    if (on >= 3) return 5;
    if (centred || on) return 1;
    return 0;
  }

  void place_circle(const std::string& v) {
    std::vector<Vec2> on;
    std::optional<Vec2> c;
    for (const auto& f : atoms_) {
      if (!f->is(Formula::Kind::Pred)) continue;
      const auto& xs = f->args();
      if (!mentions(xs, v) || !all_placed_except(xs, v)) continue;
      if (f->name() == "onCircle") on.push_back(P(xs[0]));
      if (f->name() == "isCentre") c = P(xs[0]);
    }
    if (c) {
      double r = on.empty() ? uniform(0.5, 5) : dist(*c, on[0]);
      if (r <= 0) r = uniform(0.5, 5);
      a_.set_circle(v, {c->x, c->y, r});
      return;
    }
    if (on.size() >= 3)
      if (auto k = circumcircle(on[0], on[1], on[2])) {
        a_.set_circle(v, *k);
        return;
      }
    if (on.size() == 2 && dist(on[0], on[1]) > 0) {
      Vec2 m = midpoint(on[0], on[1]);
      Vec2 o = m + uniform(-3, 3) * perp(on[1] - on[0]);
      a_.set_circle(v, {o.x, o.y, dist(o, on[0])});
      return;
    }
    if (on.size() == 1) {
      double t = uniform(0, 2 * M_PI), r = uniform(0.5, 5);
      a_.set_circle(v, {on[0].x + r * std::cos(t), on[0].y + r * std::sin(t), r});
      return;
    }
    Vec2 o = random_point();
    a_.set_circle(v, {o.x, o.y, uniform(0.5, 5)});
  }

  void place(const Binder& v) {
    switch (v.sort) {
      case Sort::Point: place_point(v.name); break;
      case Sort::Line: place_line(v.name); break;
      case Sort::Circle: place_circle(v.name); break;
      case Sort::Real: a_.set_real(v.name, uniform(-4, 4)); break;
      case Sort::Prop: throw Error(ErrorCode::UnsupportedSyntax, "cannot sample a proposition");
    }
  }

  const std::vector<Binder>& vars_;
  std::vector<FormulaPtr> atoms_;
  std::mt19937_64& rng_;
  Assignment a_;
};

}  // namespace

HypothesisSampler::HypothesisSampler(std::vector<Binder> vars, const FormulaPtr& hyps, const DefinitionRegistry& defs,
                                     std::uint64_t seed)
    : vars_(std::move(vars)), defs_(defs), rng_(seed) {
  collect_atoms(hyps, defs, atoms_, 0);
}

Assignment HypothesisSampler::next() {
  Builder b(vars_, atoms_, defs_, rng_);
  return b.build();
}

SearchResult search_counterexample(const Rule& statement, const DefinitionRegistry& defs, const EvalConfig& cfg) {
  SearchResult out;
  auto premise = defs.expand(statement.premise);
  auto goal = defs.expand(statement.conclusion);
  HypothesisSampler sampler(statement.params, statement.premise, defs, cfg.seed);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    ++out.trials;
    Assignment a = sampler.next();
    EvalStats stats;
    try {
      if (!eval_formula(a, premise, cfg, &stats)) {
        if (stats.degenerate) ++out.degenerate;
        continue;
      }
      if (stats.degenerate) {
        ++out.degenerate;
        continue;
      }
      ++out.satisfied;
      EvalStats goal_stats;
      bool holds = eval_formula(a, goal, cfg, &goal_stats);
      if (goal_stats.degenerate) {
        ++out.degenerate;
        continue;
      }
      if (!holds) {
        out.counterexample = std::move(a);
        return out;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateAngle) throw;
      ++out.degenerate;
    }
  }
  return out;
}

std::string describe(const Assignment& a) {
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& [n, p] : a.points()) os << n << " = (" << p.x << ", " << p.y << ")\n";
  for (const auto& [n, l] : a.lines()) os << n << " : " << l.a << "x + " << l.b << "y + " << l.c << " = 0\n";
  for (const auto& [n, c] : a.circles())
    os << n << " : centre (" << c.cx << ", " << c.cy << "), radius " << c.r << "\n";
  for (const auto& [n, v] : a.reals()) os << n << " = " << v << "\n";
  return os.str();
}

}  // namespace geocheck
