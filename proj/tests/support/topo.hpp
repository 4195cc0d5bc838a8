#pragma once

// Synthetic dependency graphs and an exhaustive enumeration of their
// topological orders.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "geocheck/smt/smt.hpp"

namespace topo {

/// deps[v] lists the vertices v uses; edges only go to lower indices, so the
/// graph is acyclic.
struct Dag {
  std::vector<std::vector<int>> deps;

  std::size_t size() const { return deps.size(); }
  static std::string name(int v) { return "k" + std::to_string(v); }
};

inline Dag random_dag(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p);
  Dag g;
  g.deps.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < v; ++u)
      if (edge(rng)) g.deps[v].push_back(static_cast<int>(u));
  // Shuffle labels so that index order is not already an answer.
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  Dag h;
  h.deps.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    for (int u : g.deps[v]) h.deps[perm[v]].push_back(perm[u]);
  return h;
}

/// Every linear extension of the vertices in `subset` (dependencies first).
/// Stops after `cap` orders.
inline std::vector<std::vector<int>> all_orders(const Dag& g, const std::vector<int>& subset, std::size_t cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::map<int, bool> placed;
  for (int v : subset) placed[v] = false;
  std::function<void()> rec = [&] {
    if (out.size() >= cap) return;
    if (cur.size() == subset.size()) {
      out.push_back(cur);
      return;
    }
    for (int v : subset) {
      if (placed[v]) continue;
      bool ready = true;
      for (int u : g.deps[v])
        if (placed.count(u) && !placed[u]) ready = false;
      if (!ready) continue;
      placed[v] = true;
      cur.push_back(v);
      rec();
      cur.pop_back();
      placed[v] = false;
    }
  };
  rec();
  return out;
}

/// Vertices reachable from `roots` (roots included).
inline std::vector<int> closure(const Dag& g, const std::vector<int>& roots) {
  std::vector<bool> seen(g.size());
  std::vector<int> stack(roots), out;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    out.push_back(v);
    for (int u : g.deps[v]) stack.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Constant source over a synthetic graph; each constant has one command
/// naming it.
inline geocheck::ConstantSource source(const Dag& g) {
  return [g](std::string_view name) -> std::optional<geocheck::ConstantInfo> {
    if (name.size() < 2 || name[0] != 'k') return std::nullopt;
    int v = std::stoi(std::string(name.substr(1)));
    if (v < 0 || static_cast<std::size_t>(v) >= g.size()) return std::nullopt;
    geocheck::ConstantInfo info;
    for (int u : g.deps[v]) info.deps.push_back(Dag::name(u));
    info.commands.push_back({geocheck::SmtCommand::Kind::Assert, "(assert " + Dag::name(v) + ")"});
    return info;
  };
}

/// Vertex of a command produced by source().
inline int vertex_of(const geocheck::SmtCommand& c) { return std::stoi(c.text.substr(9, c.text.size() - 10)); }

}  // namespace topo
