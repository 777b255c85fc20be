#include "reeb/sweep.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

#include "reeb/field.hpp"

namespace reeb {

GPoint normalize_gpoint(const ReebGraph& g, const GPoint& p) {
  if (p.vertex >= 0) return p;
  const auto& e = g.edges.at(p.edge);
  if (g.value(e[0]) == p.value) return GPoint::at_vertex(e[0], p.value);
  if (g.value(e[1]) == p.value) return GPoint::at_vertex(e[1], p.value);
  return p;
}

bool gpoint_eq(const ReebGraph& g, const GPoint& a, const GPoint& b) {
  GPoint x = normalize_gpoint(g, a), y = normalize_gpoint(g, b);
  if (x.vertex >= 0 || y.vertex >= 0) return x.vertex == y.vertex && x.value == y.value;
  return x.edge == y.edge && x.value == y.value;
}

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
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[a] = b;
  }
};

}  // namespace

int Quotient::level_index(const Rat& w) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), w);
  if (it != levels_.end() && *it == w) return static_cast<int>(it - levels_.begin());
  return -1;
}

int Quotient::slab_index(const Rat& w) const {
  auto it = std::upper_bound(levels_.begin(), levels_.end(), w);
  int i = static_cast<int>(it - levels_.begin()) - 1;
  if (i < 0 || i + 1 >= static_cast<int>(levels_.size())) return -1;
  if (levels_[i] < w && w < levels_[i + 1]) return i;
  return -1;
}

Quotient::Quotient(const SweepComplex& cx) : cx_(cx) {
  const int V = static_cast<int>(cx.values.size());
  const int E = static_cast<int>(cx.edges.size());

  std::set<Rat> lv(cx.values.begin(), cx.values.end());
  levels_.assign(lv.begin(), lv.end());
  const int L = static_cast<int>(levels_.size());

  auto vval = [&](int v) -> const Rat& { return cx_.values[v]; };
  auto emin = [&](int e) { return rat_min(vval(cx_.edges[e][0]), vval(cx_.edges[e][1])); };
  auto emax = [&](int e) { return rat_max(vval(cx_.edges[e][0]), vval(cx_.edges[e][1])); };

  level_comp_.assign(L, std::vector<int>(V + E, -1));
  level_ncomp_.assign(L, 0);
  slab_comp_.assign(std::max(0, L - 1), std::vector<int>(E, -1));
  slab_ncomp_.assign(std::max(0, L - 1), 0);
  level_rep_.assign(L, {});
  slab_rep_.assign(std::max(0, L - 1), {});

  // --- level sets at vertex values ---
  for (int li = 0; li < L; ++li) {
    const Rat& w = levels_[li];
    UF uf(V + E);
    std::vector<char> present(V + E, 0);
    for (int v = 0; v < V; ++v)
      if (vval(v) == w) present[v] = 1;
    for (int e = 0; e < E; ++e) {
      const Rat &a = vval(cx_.edges[e][0]), &b = vval(cx_.edges[e][1]);
      if (rat_min(a, b) < w && w < rat_max(a, b)) present[V + e] = 1;
      if (a == w && b == w) uf.unite(cx_.edges[e][0], cx_.edges[e][1]);  // flat edge
    }
    // triangles connect their level-set objects
    for (const auto& t : cx_.tris) {
      int vs[3];
      {
        std::set<int> corner_set;
        for (int k = 0; k < 3; ++k) {
          corner_set.insert(cx_.edges[t[k]][0]);
          corner_set.insert(cx_.edges[t[k]][1]);
        }
        if (corner_set.size() != 3) throw std::runtime_error("sweep: bad triangle");
        int i = 0;
        for (int v : corner_set) vs[i++] = v;
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (vval(vs[j]) < vval(vs[i])) std::swap(vs[i], vs[j]);
      Rat lo = vval(vs[0]), mid = vval(vs[1]), hi = vval(vs[2]);
      if (lo == hi) throw std::runtime_error("sweep: flat triangle");
      if (w <= lo || w >= hi) continue;  // touches at a single corner or misses
      // resolve this triangle's own boundary edges
      auto edge_of = [&](int x, int y) {
        for (int k = 0; k < 3; ++k) {
          const auto& ed = cx_.edges[t[k]];
          if ((ed[0] == x && ed[1] == y) || (ed[0] == y && ed[1] == x)) return t[k];
        }
        throw std::runtime_error("sweep: triangle edge missing");
      };
      int e_lo_mid = edge_of(vs[0], vs[1]);
      int e_lo_hi = edge_of(vs[0], vs[2]);
      int e_mid_hi = edge_of(vs[1], vs[2]);
      // objects the level segment connects inside this triangle
      auto obj_on = [&](int e) -> int {
        const Rat &a2 = vval(cx_.edges[e][0]), &b2 = vval(cx_.edges[e][1]);
        if (rat_min(a2, b2) < w && w < rat_max(a2, b2)) return V + e;
        if (a2 == w) return cx_.edges[e][0];
        if (b2 == w) return cx_.edges[e][1];
        return -1;
      };
      int o1 = -1, o2 = -1;
      if (w == mid) {
        o1 = vs[1];
        o2 = obj_on(e_lo_hi);
      } else if (w < mid) {
        o1 = obj_on(e_lo_mid);
        o2 = obj_on(e_lo_hi);
      } else {
        o1 = obj_on(e_mid_hi);
        o2 = obj_on(e_lo_hi);
      }
      if (o1 >= 0 && o2 >= 0) uf.unite(o1, o2);
    }
    // number the components of present objects
    std::map<int, int> remap;
    for (int o = 0; o < V + E; ++o) {
      if (!present[o]) continue;
      int r = uf.find(o);
      auto it = remap.find(r);
      int c;
      if (it == remap.end()) {
        c = static_cast<int>(remap.size());
        remap[r] = c;
        level_rep_[li].push_back(o);
      } else {
        c = it->second;
      }
      level_comp_[li][o] = c;
      if (o >= V) continue;
    }
    // prefer vertex representatives when available
    for (int o = 0; o < V; ++o)
      if (present[o]) level_rep_[li][level_comp_[li][o]] = o;
    level_ncomp_[li] = static_cast<int>(remap.size());
  }

  // --- slabs ---
  std::vector<std::vector<std::array<int, 2>>> slab_attach(std::max(0, L - 1));
  for (int si = 0; si + 1 < L; ++si) {
    const Rat &wl = levels_[si], &wh = levels_[si + 1];
    UF uf(E);
    std::vector<char> present(E, 0);
    for (int e = 0; e < E; ++e)
      if (emin(e) <= wl && emax(e) >= wh) present[e] = 1;
    for (const auto& t : cx_.tris) {
      int vs[3];
      {
        std::set<int> corner_set;
        for (int k = 0; k < 3; ++k) {
          corner_set.insert(cx_.edges[t[k]][0]);
          corner_set.insert(cx_.edges[t[k]][1]);
        }
        int i = 0;
        for (int v : corner_set) vs[i++] = v;
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (vval(vs[j]) < vval(vs[i])) std::swap(vs[i], vs[j]);
      Rat lo = vval(vs[0]), mid = vval(vs[1]), hi = vval(vs[2]);
      if (!(lo <= wl && hi >= wh)) continue;
      auto edge_of = [&](int x, int y) {
        for (int k = 0; k < 3; ++k) {
          const auto& ed = cx_.edges[t[k]];
          if ((ed[0] == x && ed[1] == y) || (ed[0] == y && ed[1] == x)) return t[k];
        }
        throw std::runtime_error("sweep: triangle edge missing");
      };
      int a = -1, b = -1;
      if (mid <= wl) {
        a = edge_of(vs[0], vs[2]);
        b = edge_of(vs[1], vs[2]);
      } else if (mid >= wh) {
        a = edge_of(vs[0], vs[1]);
        b = edge_of(vs[0], vs[2]);
      } else {
        continue;  // mid strictly inside the slab: impossible, mid is a level
      }
      if (present[a] && present[b]) uf.unite(a, b);
    }
    std::map<int, int> remap;
    for (int e = 0; e < E; ++e) {
      if (!present[e]) continue;
      int r = uf.find(e);
      auto it = remap.find(r);
      int c;
      if (it == remap.end()) {
        c = static_cast<int>(remap.size());
        remap[r] = c;
        slab_rep_[si].push_back(e);
      } else {
        c = it->second;
      }
      slab_comp_[si][e] = c;
    }
    slab_ncomp_[si] = static_cast<int>(remap.size());
    // attachments: limit of any constituent edge
    slab_attach[si].assign(slab_ncomp_[si], {-1, -1});
    for (int e = 0; e < E; ++e) {
      if (slab_comp_[si][e] < 0) continue;
      int c = slab_comp_[si][e];
      // lower limit of edge e at level wl
      int u = cx_.edges[e][0], v2 = cx_.edges[e][1];
      if (vval(u) > vval(v2)) std::swap(u, v2);
      int lo_obj = (vval(u) == wl) ? u : V + e;
      int hi_obj = (vval(v2) == wh) ? v2 : V + e;
      int lc = level_comp_[si][lo_obj];
      int hc = level_comp_[si + 1][hi_obj];
      assert(lc >= 0 && hc >= 0);
      auto& at = slab_attach[si][c];
      assert(at[0] == -1 || at[0] == lc);
      assert(at[1] == -1 || at[1] == hc);
      at[0] = lc;
      at[1] = hc;
    }
  }

  // --- assemble the quotient graph ---
  // degree of each level component
  std::vector<std::vector<int>> down(L), up(L);
  for (int li = 0; li < L; ++li) {
    down[li].assign(level_ncomp_[li], 0);
    up[li].assign(level_ncomp_[li], 0);
  }
  for (int si = 0; si + 1 < L; ++si)
    for (int c = 0; c < slab_ncomp_[si]; ++c) {
      up[si][slab_attach[si][c][0]]++;
      down[si + 1][slab_attach[si][c][1]]++;
    }

  std::vector<std::vector<int>> vid(L);
  int next_id = 0;
  for (int li = 0; li < L; ++li) {
    vid[li].assign(level_ncomp_[li], -1);
    for (int c = 0; c < level_ncomp_[li]; ++c) {
      bool regular = (down[li][c] == 1 && up[li][c] == 1);
      if (!regular) {
        vid[li][c] = next_id++;
        graph_.values[vid[li][c]] = levels_[li];
      }
    }
  }

  level_loc_.assign(L, {});
  slab_loc_.assign(std::max(0, L - 1), {});
  for (int li = 0; li < L; ++li) level_loc_[li].assign(level_ncomp_[li], QLoc{});
  for (int si = 0; si + 1 < L; ++si) slab_loc_[si].assign(slab_ncomp_[si], QLoc{});

  // walk chains upward from each slab component not yet assigned
  std::vector<std::vector<char>> used(std::max(0, L - 1));
  for (int si = 0; si + 1 < L; ++si) used[si].assign(slab_ncomp_[si], 0);

  auto find_up_slab = [&](int li, int c) -> std::pair<int, int> {
    // unique slab comp in slab li attaching down to (li, c)
    for (int sc = 0; sc < slab_ncomp_[li]; ++sc)
      if (slab_attach[li][sc][0] == c) return {li, sc};
    return {-1, -1};
  };

  for (int si = 0; si + 1 < L; ++si) {
    for (int sc = 0; sc < slab_ncomp_[si]; ++sc) {
      if (used[si][sc]) continue;
      // walk down to the chain start
      int csi = si, csc = sc;
      while (true) {
        int lc = slab_attach[csi][csc][0];
        if (vid[csi][lc] >= 0) break;  // critical: chain starts here
        // regular: unique down slab comp in slab csi-1 attaching up to lc
        int psc = -1;
        for (int k = 0; k < slab_ncomp_[csi - 1]; ++k)
          if (slab_attach[csi - 1][k][1] == lc) {
            psc = k;
            break;
          }
        assert(psc >= 0);
        csi -= 1;
        csc = psc;
      }
      // walk up collecting the chain
      int start_v = vid[csi][slab_attach[csi][csc][0]];
      std::vector<std::pair<int, int>> chain_slabs;
      std::vector<std::pair<int, int>> chain_levels;  // regular interior comps
      int wsi = csi, wsc = csc;
      int end_v = -1;
      while (true) {
        chain_slabs.push_back({wsi, wsc});
        used[wsi][wsc] = 1;
        int uc = slab_attach[wsi][wsc][1];
        if (vid[wsi + 1][uc] >= 0) {
          end_v = vid[wsi + 1][uc];
          break;
        }
        chain_levels.push_back({wsi + 1, uc});
        auto nx = find_up_slab(wsi + 1, uc);
        assert(nx.first >= 0);
        wsi = nx.first;
        wsc = nx.second;
      }
      int a = start_v, b = end_v;
      if (graph_.value(a) > graph_.value(b) || (graph_.value(a) == graph_.value(b) && a > b))
        std::swap(a, b);
      int eidx = static_cast<int>(graph_.edges.size());
      graph_.edges.push_back({a, b});
      for (auto& [lsi, lsc] : chain_slabs) slab_loc_[lsi][lsc] = QLoc{-1, eidx};
      for (auto& [lli, llc] : chain_levels) level_loc_[lli][llc] = QLoc{-1, eidx};
    }
  }
  for (int li = 0; li < L; ++li)
    for (int c = 0; c < level_ncomp_[li]; ++c)
      if (vid[li][c] >= 0) level_loc_[li][c] = QLoc{vid[li][c], -1};
}

int Quotient::slab_component_count(int slab) const { return slab_ncomp_.at(slab); }

int Quotient::level_comp_of_object(int li, int obj) const {
  int c = level_comp_.at(li).at(obj);
  if (c < 0) throw std::runtime_error("sweep: object absent at level");
  return c;
}

GPoint Quotient::image_of_vertex(int cx_vertex) const {
  const Rat& w = cx_.values.at(cx_vertex);
  int li = level_index(w);
  int c = level_comp_of_object(li, cx_vertex);
  const QLoc& loc = level_loc_[li][c];
  if (loc.vertex >= 0) return GPoint::at_vertex(loc.vertex, w);
  return GPoint::on_edge(loc.edge, w);
}

GPoint Quotient::image_of_edge_point(int cx_edge, const Rat& value) const {
  const int V = static_cast<int>(cx_.values.size());
  int li = level_index(value);
  if (li >= 0) {
    const Rat &a = cx_.values[cx_.edges[cx_edge][0]], &b = cx_.values[cx_.edges[cx_edge][1]];
    int obj;
    if (a == value)
      obj = cx_.edges[cx_edge][0];
    else if (b == value)
      obj = cx_.edges[cx_edge][1];
    else
      obj = V + cx_edge;
    int c = level_comp_of_object(li, obj);
    const QLoc& loc = level_loc_[li][c];
    if (loc.vertex >= 0) return GPoint::at_vertex(loc.vertex, value);
    return GPoint::on_edge(loc.edge, value);
  }
  int si = slab_index(value);
  if (si < 0) throw std::runtime_error("sweep: value outside range");
  int c = slab_comp_.at(si).at(cx_edge);
  if (c < 0) throw std::runtime_error("sweep: edge absent in slab");
  const QLoc& loc = slab_loc_[si][c];
  return GPoint::on_edge(loc.edge, value);
}

Quotient::CxPoint Quotient::preimage(const GPoint& q) const {
  const int V = static_cast<int>(cx_.values.size());
  CxPoint out;
  out.value = q.value;
  if (q.vertex >= 0) {
    // find the (level, comp) of this quotient vertex
    int li = level_index(graph_.value(q.vertex));
    for (int c = 0; c < static_cast<int>(level_loc_[li].size()); ++c) {
      if (level_loc_[li][c].vertex == q.vertex) {
        int rep = level_rep_[li][c];
        if (rep < V) {
          out.cx_vertex = rep;
        } else {
          out.cx_edge = rep - V;
        }
        return out;
      }
    }
    throw std::runtime_error("sweep: quotient vertex not found");
  }
  int li = level_index(q.value);
  if (li >= 0) {
    for (int c = 0; c < static_cast<int>(level_loc_[li].size()); ++c) {
      if (level_loc_[li][c].edge == q.edge) {
        int rep = level_rep_[li][c];
        if (rep < V)
          out.cx_vertex = rep;
        else
          out.cx_edge = rep - V;
        return out;
      }
    }
    throw std::runtime_error("sweep: quotient edge point not found at level");
  }
  int si = slab_index(q.value);
  if (si < 0) throw std::runtime_error("sweep: preimage value outside range");
  for (int c = 0; c < static_cast<int>(slab_loc_[si].size()); ++c) {
    if (slab_loc_[si][c].edge == q.edge) {
      out.cx_edge = slab_rep_[si][c];
      return out;
    }
  }
  throw std::runtime_error("sweep: quotient edge point not found in slab");
}

ReebGraph build_reeb(const ScalarField& field, bool allow_ties) {
  field.validate();
  ScalarField f = field;
  if (!f.generic()) {
    if (!allow_ties)
      throw std::runtime_error(
          "build: repeated vertex values; rerun with tie-breaking enabled");
    f = f.perturbed();
  }
  SweepComplex cx;
  std::map<int, int> idx;
  for (int id : f.vertex_ids) {
    idx[id] = static_cast<int>(cx.values.size());
    cx.values.push_back(f.values.at(id));
  }
  std::map<std::array<int, 2>, int> eidx;
  for (const auto& e : f.edges) {
    std::array<int, 2> key = {std::min(e[0], e[1]), std::max(e[0], e[1])};
    if (!eidx.count(key)) {
      eidx[key] = static_cast<int>(cx.edges.size());
      cx.edges.push_back({idx[e[0]], idx[e[1]]});
    }
  }
  for (const auto& t : f.triangles) {
    int v[3] = {t[0], t[1], t[2]};
    std::sort(v, v + 3);
    cx.tris.push_back({eidx.at({v[0], v[1]}), eidx.at({v[0], v[2]}), eidx.at({v[1], v[2]})});
  }
  Quotient q(cx);
  return canonicalize(q.graph());
}

ReebGraph reeb_of_labeled_graph(const std::map<int, Rat>& values,
                                const std::vector<std::array<int, 2>>& edges) {
  SweepComplex cx;
  std::map<int, int> idx;
  for (const auto& [id, v] : values) {
    idx[id] = static_cast<int>(cx.values.size());
    cx.values.push_back(v);
  }
  for (const auto& e : edges) cx.edges.push_back({idx.at(e[0]), idx.at(e[1])});
  Quotient q(cx);
  return canonicalize(q.graph());
}

}  // namespace reeb
