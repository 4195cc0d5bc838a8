#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geocheck/core/logic.hpp"

namespace geocheck {

struct SymbolSig {
  std::string name;
  std::vector<Sort> args;
  /// Prop for predicates, Real for functions.
  Sort result;
};

/// The fixed vocabulary of the geometry: primitive predicates over objects and
/// the Real-valued measure and arithmetic functions.
class Signature {
 public:
  explicit Signature(std::vector<SymbolSig> symbols);

  const SymbolSig* lookup(std::string_view name) const;
  bool is_predicate(std::string_view name) const;
  bool is_function(std::string_view name) const;
  const std::vector<SymbolSig>& symbols() const { return symbols_; }

 private:
  std::vector<SymbolSig> symbols_;
};

const Signature& builtin_signature();

/// Sorts Point, Line, Circle in declaration order.
const std::vector<Sort>& object_sorts();

}  // namespace geocheck
