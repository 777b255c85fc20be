#include "reeb/paths.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace reeb {

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) {
    while (p[x] != x) {
      p[x] = p[p[x]];
      x = p[x];
    }
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

PathMetric::PathMetric(const ReebGraph& g) : g_(g) {
  for (const auto& [id, v] : g_.values) ids_.push_back(id);
  const int n = static_cast<int>(ids_.size());
  for (int i = 0; i < n; ++i) idx_[ids_[i]] = i;
  pareto_.assign(n, std::vector<std::vector<std::pair<Rat, Rat>>>(n));

  std::vector<Rat> crit = g_.critical_values();
  // For each candidate lower bound lo (descending), sweep hi upward and
  // record the first hi at which each pair becomes connected.
  for (const Rat& lo : crit) {
    UF uf(n);
    std::vector<char> in(n, 0);
    std::vector<std::vector<std::pair<Rat, Rat>>> first(n, std::vector<std::pair<Rat, Rat>>(n));
    std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
    for (const Rat& hi : crit) {
      if (hi < lo) continue;
      for (int i = 0; i < n; ++i)
        if (!in[i] && g_.value(ids_[i]) >= lo && g_.value(ids_[i]) <= hi) in[i] = 1;
      for (const auto& e : g_.edges) {
        int a = idx_[e[0]], b = idx_[e[1]];
        if (in[a] && in[b] && g_.value(e[0]) >= lo && g_.value(e[0]) <= hi &&
            g_.value(e[1]) >= lo && g_.value(e[1]) <= hi)
          uf.unite(a, b);
      }
      for (int i = 0; i < n; ++i) {
        if (!in[i]) continue;
        for (int j = i + 1; j < n; ++j) {
          if (!in[j] || seen[i][j]) continue;
          if (uf.find(i) == uf.find(j)) {
            seen[i][j] = 1;
            first[i][j] = {lo, hi};
          }
        }
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (seen[i][j]) pareto_[i][j].push_back(first[i][j]);
  }
  // prune dominated ranges
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto& v = pareto_[i][j];
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;  // lo descending
        return x.second < y.second;
      });
      std::vector<std::pair<Rat, Rat>> keep;
      for (const auto& r : v) {
        if (!keep.empty() && keep.back().second <= r.second) continue;  // dominated
        keep.push_back(r);
      }
      v = keep;
      pareto_[j][i] = v;
    }
  for (int i = 0; i < n; ++i) pareto_[i][i].push_back({g_.value(ids_[i]), g_.value(ids_[i])});
}

const std::vector<std::pair<Rat, Rat>>& PathMetric::pareto(int a, int b) const {
  return pareto_[idx_.at(a)][idx_.at(b)];
}

std::optional<Rat> PathMetric::distance(const GPoint& u0, const GPoint& v0) const {
  GPoint u = normalize_gpoint(g_, u0), v = normalize_gpoint(g_, v0);
  // same cell: direct monotone segment
  if (u.vertex >= 0 && v.vertex >= 0 && u.vertex == v.vertex) return Rat(0);
  if (u.edge >= 0 && v.edge >= 0 && u.edge == v.edge) return rat_abs(u.value - v.value);

  auto ends = [&](const GPoint& p) -> std::vector<int> {
    if (p.vertex >= 0) return {p.vertex};
    return {g_.edges[p.edge][0], g_.edges[p.edge][1]};
  };
  std::optional<Rat> best;
  for (int a : ends(u)) {
    for (int b : ends(v)) {
      // entering via a requires covering [min(u.value, f(a)), max(...)], etc.
      for (const auto& [lo, hi] : pareto(a, b)) {
        Rat L = rat_min(rat_min(u.value, v.value), lo);
        Rat H = rat_max(rat_max(u.value, v.value), hi);
        // the segment from u to a must stay inside [L, H]: it does, since the
        // segment spans [min(u.value, f(a)), max(u.value, f(a))] and f(a) is
        // within [lo, hi] while u.value is included above
        Rat h = H - L;
        if (!best || h < *best) best = h;
      }
    }
  }
  return best;
}

std::optional<Rat> path_height_distance(const ReebGraph& g, const GPoint& u, const GPoint& v) {
  PathMetric pm(g);
  return pm.distance(u, v);
}

Rat linf_distance(const ScalarField& f, const ScalarField& g) {
  if (f.vertex_ids != g.vertex_ids || f.edges != g.edges || f.triangles != g.triangles)
    throw std::runtime_error("linf: fields live on different complexes");
  Rat m(0);
  for (const auto& [id, v] : f.values) m = rat_max(m, rat_abs(v - g.values.at(id)));
  return m;
}

}  // namespace reeb
