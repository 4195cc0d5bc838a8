#include "geocheck/theory/signature.hpp"

#include <algorithm>

namespace geocheck {

Signature::Signature(std::vector<SymbolSig> symbols) : symbols_(std::move(symbols)) {}

const SymbolSig* Signature::lookup(std::string_view name) const {
  auto it = std::find_if(symbols_.begin(), symbols_.end(), [&](const SymbolSig& s) { return s.name == name; });
  return it == symbols_.end() ? nullptr : &*it;
}

bool Signature::is_predicate(std::string_view name) const {
  const auto* s = lookup(name);
  return s && s->result == Sort::Prop;
}

bool Signature::is_function(std::string_view name) const {
  const auto* s = lookup(name);
  return s && s->result == Sort::Real;
}

const Signature& builtin_signature() {
  using S = Sort;
  static const Signature sig({
      {"onLine", {S::Point, S::Line}, S::Prop},
      {"between", {S::Point, S::Point, S::Point}, S::Prop},
      {"onCircle", {S::Point, S::Circle}, S::Prop},
      {"insideCircle", {S::Point, S::Circle}, S::Prop},
      {"outsideCircle", {S::Point, S::Circle}, S::Prop},
      {"isCentre", {S::Point, S::Circle}, S::Prop},
      {"sameSide", {S::Point, S::Point, S::Line}, S::Prop},
      {"opposingSides", {S::Point, S::Point, S::Line}, S::Prop},
      {"intersectsLine", {S::Line, S::Line}, S::Prop},
      {"intersectsCircle", {S::Line, S::Circle}, S::Prop},
      {"eqPoint", {S::Point, S::Point}, S::Prop},
      {"eqLine", {S::Line, S::Line}, S::Prop},
      {"eqCircle", {S::Circle, S::Circle}, S::Prop},
      {"length", {S::Point, S::Point}, S::Real},
      {"angle", {S::Point, S::Point, S::Point}, S::Real},
      {"area", {S::Point, S::Point, S::Point}, S::Real},
      {"rightAngle", {}, S::Real},
      {"pi", {}, S::Real},
      {"sin", {S::Real}, S::Real},
      {"cos", {S::Real}, S::Real},
      {"add", {S::Real, S::Real}, S::Real},
      {"sub", {S::Real, S::Real}, S::Real},
      {"mul", {S::Real, S::Real}, S::Real},
      {"div", {S::Real, S::Real}, S::Real},
      {"neg", {S::Real}, S::Real},
  });
  return sig;
}

const std::vector<Sort>& object_sorts() {
  static const std::vector<Sort> sorts{Sort::Point, Sort::Line, Sort::Circle};
  return sorts;
}

}  // namespace geocheck
