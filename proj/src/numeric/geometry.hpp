#pragma once

// Plane primitives shared by the evaluator and the sampler.

#include <cmath>
#include <optional>
#include <vector>

#include "geocheck/numeric/model.hpp"

namespace geocheck::geo {

inline Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
inline Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
inline Vec2 operator*(double k, Vec2 p) { return {k * p.x, k * p.y}; }
inline double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
inline double cross(Vec2 p, Vec2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Vec2 p) { return std::hypot(p.x, p.y); }
inline double dist(Vec2 p, Vec2 q) { return norm(p - q); }
inline Vec2 perp(Vec2 p) { return {-p.y, p.x}; }
inline Vec2 midpoint(Vec2 p, Vec2 q) { return 0.5 * (p + q); }

inline double mag(Vec2 p) { return std::max(std::fabs(p.x), std::fabs(p.y)); }

inline LineCoef normalized(LineCoef l) {
  double n = std::hypot(l.a, l.b);
  l.a /= n;
  l.b /= n;
  l.c /= n;
  // Canonical sign so that equal lines have equal coefficients.
  if (l.a < 0 || (l.a == 0 && l.b < 0)) {
    l.a = -l.a;
    l.b = -l.b;
    l.c = -l.c;
  }
  return l;
}

inline std::optional<LineCoef> line_through(Vec2 p, Vec2 q) {
  Vec2 d = q - p;
  if (norm(d) == 0) return std::nullopt;
  LineCoef l{-d.y, d.x, 0};
  l.c = -(l.a * p.x + l.b * p.y);
  return normalized(l);
}

inline double side(const LineCoef& l, Vec2 p) { return l.a * p.x + l.b * p.y + l.c; }
inline Vec2 direction(const LineCoef& l) { return {-l.b, l.a}; }
inline Vec2 anchor(const LineCoef& l) { return {-l.a * l.c, -l.b * l.c}; }
inline Vec2 centre(const CircleCoef& c) { return {c.cx, c.cy}; }

inline Vec2 foot(const LineCoef& l, Vec2 p) {
  double s = side(l, p);
  return {p.x - s * l.a, p.y - s * l.b};
}

inline std::optional<Vec2> intersect(const LineCoef& l, const LineCoef& m) {
  double det = l.a * m.b - l.b * m.a;
  if (std::fabs(det) < 1e-12) return std::nullopt;
  return Vec2{(l.b * m.c - m.b * l.c) / det, (m.a * l.c - l.a * m.c) / det};
}

inline std::vector<Vec2> intersect(const LineCoef& l, const CircleCoef& c) {
  Vec2 f = foot(l, centre(c));
  double d = dist(f, centre(c));
  // near-tangent configurations collapse to the touching point
  if (std::fabs(d - c.r) <= 1e-9 * std::max(1.0, c.r)) return {f};
  if (d > c.r) return {};
  double h = std::sqrt(std::max(0.0, c.r * c.r - d * d));
  Vec2 u = direction(l);
  return {f + h * u, f - h * u};
}

inline std::vector<Vec2> intersect(const CircleCoef& c1, const CircleCoef& c2) {
  Vec2 p = centre(c1), q = centre(c2);
  double d = dist(p, q);
  if (d == 0) return {};
  double tol = 1e-9 * std::max({1.0, c1.r, c2.r});
  bool touching = std::fabs(d - (c1.r + c2.r)) <= tol || std::fabs(d - std::fabs(c1.r - c2.r)) <= tol;
  if (!touching && (d > c1.r + c2.r || d < std::fabs(c1.r - c2.r))) return {};
  double a = (c1.r * c1.r - c2.r * c2.r + d * d) / (2 * d);
  double h = touching ? 0.0 : std::sqrt(std::max(0.0, c1.r * c1.r - a * a));
  Vec2 u = (1 / d) * (q - p);
  Vec2 m = p + a * u;
  if (h == 0) return {m};
  return {m + h * perp(u), m - h * perp(u)};
}

inline std::optional<CircleCoef> circumcircle(Vec2 a, Vec2 b, Vec2 c) {
  double d = 2 * cross(b - a, c - a);
  if (std::fabs(d) < 1e-12 * std::max(1.0, dot(b - a, b - a) * dot(c - a, c - a))) return std::nullopt;
  double b2 = dot(b - a, b - a), c2 = dot(c - a, c - a);
  Vec2 ba = b - a, ca = c - a;
  Vec2 o{a.x + (ca.y * b2 - ba.y * c2) / d, a.y + (ba.x * c2 - ca.x * b2) / d};
  return CircleCoef{o.x, o.y, dist(o, a)};
}

}  // namespace geocheck::geo
