#pragma once

#include <random>

#include "reeb/field.hpp"
#include "reeb/graph.hpp"

namespace reeb::testutil {

// random generic Reeb graph: distinct rational values, no flat edges,
// every vertex after the first attached downward somewhere
inline ReebGraph random_generic_graph(std::mt19937& rng, int max_vertices = 10) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  int n = nv(rng);
  ReebGraph g;
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) g.values[i] = Rat(2 * i + perm[i], 2);  // distinct
  std::vector<std::pair<Rat, int>> order;
  for (const auto& [id, v] : g.values) order.push_back({v, id});
  std::sort(order.begin(), order.end());
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    int j = pick(rng);
    g.edges.push_back({order[j].second, order[i].second});
  }
  // extra edges for cycles
  std::uniform_int_distribution<int> extra(0, 2);
  int k = extra(rng);
  for (int t = 0; t < k && n >= 2; ++t) {
    std::uniform_int_distribution<int> pa(0, n - 2);
    int i = pa(rng);
    std::uniform_int_distribution<int> pb(i + 1, n - 1);
    int j = pb(rng);
    g.edges.push_back({order[i].second, order[j].second});
  }
  for (auto& e : g.edges)
    if (g.value(e[0]) > g.value(e[1])) std::swap(e[0], e[1]);
  std::sort(g.edges.begin(), g.edges.end());
  return canonicalize(g);
}

// f plus per-vertex noise bounded by bound (multiples of bound/denom)
inline ScalarField perturb(const ScalarField& f, std::mt19937& rng, const Rat& bound,
                           int denom = 16) {
  ScalarField g = f;
  std::uniform_int_distribution<int> step(-denom, denom);
  for (auto& [id, v] : g.values) v = v + bound * Rat(step(rng), denom);
  return g;
}

}  // namespace reeb::testutil
