#include "reeb/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace reeb {

Rat linf_pp(const PPoint& a, const PPoint& b) {
  return rat_max(rat_abs(a.birth - b.birth), rat_abs(a.death - b.death));
}

Rat half_persistence(const PPoint& p) { return rat_abs(p.birth - p.death) / 2; }

Rat matching_cost(const Diagram& d1, const Diagram& d2, const Matching& m) {
  Rat c(0);
  for (auto& [i, j] : m.pairs) c = rat_max(c, linf_pp(d1.points[i], d2.points[j]));
  for (int i : m.unmatched1) c = rat_max(c, half_persistence(d1.points[i]));
  for (int j : m.unmatched2) c = rat_max(c, half_persistence(d2.points[j]));
  return c;
}

namespace {

// off-diagonal points only
std::vector<PPoint> off_diag(const std::vector<PPoint>& pts) {
  std::vector<PPoint> out;
  for (const auto& p : pts)
    if (p.birth != p.death) out.push_back(p);
  return out;
}

// Maximum bipartite matching via augmenting paths.
struct Bipartite {
  int nl, nr;
  std::vector<std::vector<int>> adj;
  std::vector<int> ml, mr;

  Bipartite(int l, int r) : nl(l), nr(r), adj(l), ml(l, -1), mr(r, -1) {}

  bool augment(int u, std::vector<char>& vis) {
    for (int v : adj[u]) {
      if (vis[v]) continue;
      vis[v] = 1;
      if (mr[v] < 0 || augment(mr[v], vis)) {
        ml[u] = v;
        mr[v] = u;
        return true;
      }
    }
    return false;
  }

  int max_matching() {
    int total = 0;
    for (int u = 0; u < nl; ++u) {
      std::vector<char> vis(nr, 0);
      if (augment(u, vis)) ++total;
    }
    return total;
  }
};

// feasibility of threshold t for the padded square matching
bool feasible(const std::vector<PPoint>& a, const std::vector<PPoint>& b, const Rat& t) {
  int n1 = static_cast<int>(a.size()), n2 = static_cast<int>(b.size());
  // left: a points then diag slots of b ; right: b points then diag slots of a
  Bipartite g(n1 + n2, n2 + n1);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j)
      if (linf_pp(a[i], b[j]) <= t) g.adj[i].push_back(j);
    if (half_persistence(a[i]) <= t) g.adj[i].push_back(n2 + i);
  }
  for (int j = 0; j < n2; ++j) {
    auto& row = g.adj[n1 + j];
    if (half_persistence(b[j]) <= t) row.push_back(j);
    for (int i = 0; i < n1; ++i) row.push_back(n2 + i);
  }
  return g.max_matching() == n1 + n2;
}

Rat bottleneck_sets(const std::vector<PPoint>& a, const std::vector<PPoint>& b) {
  if (a.empty() && b.empty()) return Rat(0);
  std::set<Rat> cand;
  cand.insert(Rat(0));
  for (const auto& x : a) cand.insert(half_persistence(x));
  for (const auto& y : b) cand.insert(half_persistence(y));
  for (const auto& x : a)
    for (const auto& y : b) cand.insert(linf_pp(x, y));
  std::vector<Rat> cs(cand.begin(), cand.end());
  int lo = 0, hi = static_cast<int>(cs.size()) - 1;
  if (feasible(a, b, cs[lo])) return cs[lo];
  while (lo + 1 < hi) {
    int mid = (lo + hi) / 2;
    if (feasible(a, b, cs[mid]))
      hi = mid;
    else
      lo = mid;
  }
  return cs[hi];
}

}  // namespace

Rat bottleneck_ungraded(const Diagram& d1, const Diagram& d2) {
  return bottleneck_sets(off_diag(d1.points), off_diag(d2.points));
}

Rat bottleneck_class(const Diagram& d1, const Diagram& d2, PClass c) {
  return bottleneck_sets(off_diag(d1.of_class(c)), off_diag(d2.of_class(c)));
}

Rat bottleneck_graded(const Diagram& d1, const Diagram& d2) {
  Rat m(0);
  for (PClass c : {PClass::Ord0, PClass::Ext0, PClass::Rel1, PClass::Ext1})
    m = rat_max(m, bottleneck_class(d1, d2, c));
  return m;
}

Rat bottleneck_bruteforce(const Diagram& d1, const Diagram& d2) {
  auto a = off_diag(d1.points), b = off_diag(d2.points);
  int n1 = static_cast<int>(a.size()), n2 = static_cast<int>(b.size());
  std::optional<Rat> best;
  std::vector<int> assign(n1, -1);
  std::vector<char> used(n2, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n1) {
      Rat c(0);
      for (int k = 0; k < n1; ++k)
        c = rat_max(c, assign[k] < 0 ? half_persistence(a[k]) : linf_pp(a[k], b[assign[k]]));
      for (int j = 0; j < n2; ++j)
        if (!used[j]) c = rat_max(c, half_persistence(b[j]));
      if (!best || c < *best) best = c;
      return;
    }
    rec(i + 1);  // a[i] to the diagonal
    for (int j = 0; j < n2; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      assign[i] = j;
      rec(i + 1);
      used[j] = 0;
      assign[i] = -1;
    }
  };
  rec(0);
  return best ? *best : Rat(0);
}

namespace {

// Hungarian algorithm (Jonker-style shortest augmenting path) over a
// totally ordered cost type.
template <typename C>
C hungarian(const std::vector<std::vector<C>>& cost, const C& zero, const C& inf) {
  int n = static_cast<int>(cost.size());
  if (n == 0) return zero;
  std::vector<C> u(n + 1, zero), v(n + 1, zero);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<C> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      C delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        C cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  C total = zero;
  for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

Rat rat_pow(const Rat& base, long e) {
  Rat r(1);
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

WassersteinResult wasserstein(const Diagram& d1, const Diagram& d2, const Rat& q, bool graded) {
  if (q < 1) throw std::runtime_error("wasserstein: q < 1");
  auto a = off_diag(d1.points), b = off_diag(d2.points);
  int n1 = static_cast<int>(a.size()), n2 = static_cast<int>(b.size());
  int n = n1 + n2;
  WassersteinResult res;
  if (n == 0) {
    res.total_q = Rat(0);
    res.value = 0.0;
    res.exact = true;
    return res;
  }
  bool integral_q = denominator(q) == 1;
  auto forbidden = [&](int i, int j) {
    return graded && a[i].cls != b[j].cls;
  };
  if (integral_q) {
    long qe = static_cast<long>(numerator(q));
    // a large-but-finite stand-in for forbidden pairings
    Rat big(1);
    for (const auto& p : a) big += rat_pow(rat_abs(p.birth) + rat_abs(p.death) + 1, qe);
    for (const auto& p : b) big += rat_pow(rat_abs(p.birth) + rat_abs(p.death) + 1, qe);
    big *= n + 1;
    std::vector<std::vector<Rat>> cost(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j)
        cost[i][j] = forbidden(i, j) ? big : rat_pow(linf_pp(a[i], b[j]), qe);
    for (int i = 0; i < n1; ++i)
      for (int j = n2; j < n; ++j)
        cost[i][j] = (j - n2 == i) ? rat_pow(half_persistence(a[i]), qe) : big;
    for (int i = n1; i < n; ++i)
      for (int j = 0; j < n2; ++j)
        cost[i][j] = (i - n1 == j) ? rat_pow(half_persistence(b[j]), qe) : big;
    // diag-diag: 0 (already)
    Rat inf = big * big;
    Rat total = hungarian<Rat>(cost, Rat(0), inf);
    res.total_q = total;
    res.exact = true;
    res.value = std::pow(rat_to_double(total), 1.0 / static_cast<double>(qe));
    return res;
  }
  double qd = rat_to_double(q);
  const double INF = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  double big = 1.0;
  for (const auto& p : a) big += std::pow(rat_to_double(linf_pp(p, p)) + 10.0, qd);
  for (const auto& p : b) big += std::pow(std::abs(rat_to_double(p.birth)) + std::abs(rat_to_double(p.death)) + 10.0, qd);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      cost[i][j] = forbidden(i, j) ? big : std::pow(rat_to_double(linf_pp(a[i], b[j])), qd);
  for (int i = 0; i < n1; ++i)
    for (int j = n2; j < n; ++j)
      cost[i][j] = (j - n2 == i) ? std::pow(rat_to_double(half_persistence(a[i])), qd) : big;
  for (int i = n1; i < n; ++i)
    for (int j = 0; j < n2; ++j)
      cost[i][j] = (i - n1 == j) ? std::pow(rat_to_double(half_persistence(b[j])), qd) : big;
  double total = hungarian<double>(cost, 0.0, INF);
  res.total_q = Rat(0);
  res.exact = false;
  res.value = std::pow(total, 1.0 / qd);
  return res;
}

}  // namespace reeb
