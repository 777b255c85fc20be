#include "reeb/smoothing.hpp"

#include <algorithm>
#include <stdexcept>

namespace reeb {

Rat Smoothing::row_t(int k) const {
  if (k == 0) return -eps_;
  if (k == 1) return Rat(0);
  return eps_;
}

Smoothing::Smoothing(const ReebGraph& source, const Rat& eps) : src_(source), eps_(eps) {
  if (eps < 0) throw std::runtime_error("smooth: eps < 0");
  if (eps == 0 || src_.values.empty()) {
    graph_ = src_;
    return;
  }
  for (const auto& [id, v] : src_.values) {
    vidx_[id] = static_cast<int>(vid_list_.size());
    vid_list_.push_back(id);
  }
  const int V = static_cast<int>(vid_list_.size());
  const int E = src_.edge_count();

  SweepComplex cx;
  cx.values.resize(3 * V);
  for (int i = 0; i < V; ++i)
    for (int k = 0; k < 3; ++k) cx.values[3 * i + k] = src_.value(vid_list_[i]) + row_t(k);

  auto pv = [&](int vi, int k) { return 3 * vi + k; };

  // vertical edges
  for (int i = 0; i < V; ++i)
    for (int k = 0; k < 2; ++k) {
      vert_edge_[{i, k}] = static_cast<int>(cx.edges.size());
      pedges_.push_back(PEdge{0, i, -1, k});
      cx.edges.push_back({pv(i, k), pv(i, k + 1)});
    }
  // horizontal + diagonal edges and triangles per source edge
  for (int e = 0; e < E; ++e) {
    int u = src_.edges[e][0], w = src_.edges[e][1];
    if (src_.value(u) > src_.value(w)) std::swap(u, w);
    int ui = vidx_[u], wi = vidx_[w];
    for (int k = 0; k < 3; ++k) {
      horiz_edge_[{e, k}] = static_cast<int>(cx.edges.size());
      pedges_.push_back(PEdge{1, e, -1, k});
      cx.edges.push_back({pv(ui, k), pv(wi, k)});
    }
    for (int k = 0; k < 2; ++k) {
      diag_edge_[{e, k}] = static_cast<int>(cx.edges.size());
      pedges_.push_back(PEdge{2, e, -1, k});
      cx.edges.push_back({pv(ui, k), pv(wi, k + 1)});
      cx.tris.push_back({horiz_edge_[{e, k}], vert_edge_[{wi, k}], diag_edge_[{e, k}]});
      cx.tris.push_back({horiz_edge_[{e, k + 1}], vert_edge_[{ui, k}], diag_edge_[{e, k}]});
    }
  }

  quo_ = std::make_unique<Quotient>(cx);
  graph_ = quo_->graph();
}

GPoint Smoothing::image_of_product_point(int pedge, const Rat& level) const {
  return quo_->image_of_edge_point(pedge, level);
}

GPoint Smoothing::forward(const GPoint& x0, const Rat& t) const {
  if (eps_ == 0) {
    if (t != 0) throw std::runtime_error("smooth: shift on zero smoothing");
    return x0;
  }
  if (rat_abs(t) > eps_) throw std::runtime_error("smooth: |t| > eps");
  GPoint x = normalize_gpoint(src_, x0);
  Rat level = x.value + t;
  if (x.vertex >= 0) {
    int vi = vidx_.at(x.vertex);
    // on the vertical segment of this vertex
    for (int k = 0; k < 3; ++k)
      if (t == row_t(k)) return quo_->image_of_vertex(3 * vi + k);
    int k = (t < 0) ? 0 : 1;
    return image_of_product_point(vert_edge_.at({vi, k}), level);
  }
  // interior of source edge x.edge at value x.value
  int e = x.edge;
  for (int k = 0; k < 3; ++k)
    if (t == row_t(k)) return image_of_product_point(horiz_edge_.at({e, k}), level);
  int k = (t < 0) ? 0 : 1;  // rectangle row
  int u = src_.edges[e][0], w = src_.edges[e][1];
  if (src_.value(u) > src_.value(w)) std::swap(u, w);
  const Rat &fu = src_.value(u), &fw = src_.value(w);
  // position within the rectangle: alpha along the edge, beta along t
  Rat alpha = (x.value - fu) / (fw - fu);
  Rat beta = (t - row_t(k)) / eps_;
  if (alpha == beta) return image_of_product_point(diag_edge_.at({e, k}), level);
  // pick a strictly straddling edge of the containing triangle
  std::vector<int> tri_edges;
  if (alpha > beta) {
    // lower-right triangle: (u,k), (w,k), (w,k+1)
    tri_edges = {horiz_edge_.at({e, k}), vert_edge_.at({vidx_.at(w), k}), diag_edge_.at({e, k})};
  } else {
    tri_edges = {horiz_edge_.at({e, k + 1}), vert_edge_.at({vidx_.at(u), k}), diag_edge_.at({e, k})};
  }
  for (int pe : tri_edges) {
    const auto& ce = quo_ ? std::array<int, 2>{} : std::array<int, 2>{};
    (void)ce;
    // straddle test against the product edge's endpoint values
    // reconstruct endpoint values from the pedge table
    const PEdge& P = pedges_[pe];
    Rat a, b;
    if (P.kind == 0) {
      a = src_.value(vid_list_[P.a]) + row_t(P.row);
      b = src_.value(vid_list_[P.a]) + row_t(P.row + 1);
    } else if (P.kind == 1) {
      a = fu + row_t(P.row);
      b = fw + row_t(P.row);
    } else {
      a = fu + row_t(P.row);
      b = fw + row_t(P.row + 1);
    }
    if (rat_min(a, b) < level && level < rat_max(a, b))
      return image_of_product_point(pe, level);
  }
  throw std::runtime_error("smooth: no straddling edge found");
}

std::pair<GPoint, Rat> Smoothing::product_point_to_source(int pedge, const Rat& level) const {
  const PEdge& P = pedges_[pedge];
  if (P.kind == 0) {
    int vid = vid_list_[P.a];
    return {GPoint::at_vertex(vid, src_.value(vid)), level - src_.value(vid)};
  }
  int e = P.a;
  int u = src_.edges[e][0], w = src_.edges[e][1];
  if (src_.value(u) > src_.value(w)) std::swap(u, w);
  const Rat &fu = src_.value(u), &fw = src_.value(w);
  if (P.kind == 1) {
    Rat t = row_t(P.row);
    Rat v = level - t;
    GPoint p = (v == fu)   ? GPoint::at_vertex(u, fu)
               : (v == fw) ? GPoint::at_vertex(w, fw)
                           : GPoint::on_edge(e, v);
    return {p, t};
  }
  // diagonal: v = fu + (fw-fu)*theta, t = row + eps*theta, v + t = level
  Rat theta = (level - fu - row_t(P.row)) / ((fw - fu) + eps_);
  Rat v = fu + (fw - fu) * theta;
  Rat t = row_t(P.row) + eps_ * theta;
  GPoint p = (v == fu)   ? GPoint::at_vertex(u, fu)
             : (v == fw) ? GPoint::at_vertex(w, fw)
                         : GPoint::on_edge(e, v);
  return {p, t};
}

std::pair<GPoint, Rat> Smoothing::backward(const GPoint& s0) const {
  if (eps_ == 0) return {s0, Rat(0)};
  GPoint s = normalize_gpoint(graph_, s0);
  Quotient::CxPoint cp = quo_->preimage(s);
  if (cp.cx_vertex >= 0) {
    int vi = cp.cx_vertex / 3, k = cp.cx_vertex % 3;
    int vid = vid_list_[vi];
    return {GPoint::at_vertex(vid, src_.value(vid)), row_t(k)};
  }
  return product_point_to_source(cp.cx_edge, cp.value);
}

SmoothingResult smooth(const ReebGraph& g, const Rat& eps) {
  auto det = std::make_shared<Smoothing>(g, eps);
  return SmoothingResult{det->graph(), det};
}

Truncation::Truncation(const ReebGraph& source, const Rat& tau) : src_(source), tau_(tau) {
  if (tau < 0) throw std::runtime_error("truncate: tau < 0");
  // monotone reach DP, vertices by value (no flat edges assumed)
  std::vector<std::pair<Rat, int>> order;
  for (const auto& [id, v] : src_.values) order.push_back({v, id});
  std::sort(order.begin(), order.end());
  std::map<int, Rat> U, D;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = it->second;
    Rat u = src_.value(v);
    for (const auto& e : src_.edges) {
      int other = -1;
      if (e[0] == v) other = e[1];
      else if (e[1] == v) other = e[0];
      else continue;
      if (src_.value(other) > src_.value(v)) u = rat_max(u, U.at(other));
    }
    U[v] = u;
  }
  for (auto& [val, v] : order) {
    Rat d = src_.value(v);
    for (const auto& e : src_.edges) {
      int other = -1;
      if (e[0] == v) other = e[1];
      else if (e[1] == v) other = e[0];
      else continue;
      if (src_.value(other) < src_.value(v)) d = rat_min(d, D.at(other));
    }
    D[v] = d;
  }

  auto kept_vertex = [&](int v) {
    return U.at(v) - src_.value(v) >= tau_ && src_.value(v) - D.at(v) >= tau_;
  };

  int next_id = src_.fresh_id();
  for (const auto& [id, v] : src_.values) {
    if (kept_vertex(id)) {
      graph_.values[id] = v;
      vmap_[id] = id;
      vmap_rev_[id] = id;
    }
  }
  for (int e = 0; e < src_.edge_count(); ++e) {
    int u = src_.edges[e][0], w = src_.edges[e][1];
    if (src_.value(u) > src_.value(w)) std::swap(u, w);
    Rat lo = rat_max(D.at(u) + tau_, src_.value(u));
    Rat hi = rat_min(U.at(w) - tau_, src_.value(w));
    if (lo > hi) continue;
    int a, b;
    if (lo == src_.value(u)) {
      a = u;
    } else {
      a = next_id++;
      graph_.values[a] = lo;
      cut_[a] = {e, lo};
    }
    if (hi == src_.value(w)) {
      b = w;
    } else {
      b = next_id++;
      graph_.values[b] = hi;
      cut_[b] = {e, hi};
    }
    if (lo == hi) {
      // the kept part of this edge is a single point; it survives only
      // through its endpoints, which are vertices already
      if (a != b) {
        // a single interior point: represent as an isolated vertex only if
        // nothing else keeps it; skip (it is a cut at measure zero)
        graph_.values.erase(a != u ? a : -1);
        graph_.values.erase(b != w ? b : -1);
      }
      continue;
    }
    int eidx = static_cast<int>(graph_.edges.size());
    graph_.edges.push_back({a, b});
    seg_.push_back(Seg{e, lo, hi});
    edge_segs_[e].push_back(eidx);
  }
  graph_.values.erase(-1);
}

GPoint Truncation::to_source(const GPoint& t0) const {
  GPoint t = normalize_gpoint(graph_, t0);
  if (t.vertex >= 0) {
    auto it = cut_.find(t.vertex);
    if (it != cut_.end()) return GPoint::on_edge(it->second.first, it->second.second);
    return GPoint::at_vertex(t.vertex, t.value);
  }
  const Seg& sg = seg_.at(t.edge);
  return GPoint::on_edge(sg.src_edge, t.value);
}

std::optional<GPoint> Truncation::from_source(const GPoint& s0) const {
  GPoint s = normalize_gpoint(src_, s0);
  if (s.vertex >= 0) {
    if (graph_.values.count(s.vertex)) return GPoint::at_vertex(s.vertex, s.value);
    return std::nullopt;
  }
  auto it = edge_segs_.find(s.edge);
  if (it == edge_segs_.end()) return std::nullopt;
  for (int te : it->second) {
    const Seg& sg = seg_[te];
    if (sg.lo <= s.value && s.value <= sg.hi) {
      // land on a cut vertex when at the segment boundary
      if (s.value == sg.lo || s.value == sg.hi) {
        const auto& e = graph_.edges[te];
        int vid = (graph_.value(e[0]) == s.value) ? e[0] : e[1];
        return GPoint::at_vertex(vid, s.value);
      }
      return GPoint::on_edge(te, s.value);
    }
  }
  return std::nullopt;
}

ReebGraph truncate(const ReebGraph& g, const Rat& tau) {
  Truncation t(g, tau);
  return t.graph();
}

ReebGraph truncated_smooth(const ReebGraph& g, const Rat& eps, const Rat& tau) {
  if (tau < 0 || tau > 2 * eps) throw std::runtime_error("truncated_smooth: need 0 <= tau <= 2*eps");
  SmoothingResult s = smooth(g, eps);
  return truncate(s.graph, tau);
}

}  // namespace reeb

#include "reeb/leveled.hpp"

namespace reeb {

bool eta_map_valid(const ReebGraph& g, const Rat& eps, const Rat& tau, const Rat& eps2,
                   const Rat& tau2) {
  if (!(Rat(0) <= tau2 - tau && tau2 - tau <= eps2 - eps)) return false;
  Smoothing s1(g, eps), s2(g, eps2);
  Truncation t1(s1.graph(), tau), t2(s2.graph(), tau2);
  if (t1.graph().values.empty()) return true;
  std::set<Rat> gs;
  for (const auto& [id, v] : t1.graph().values) gs.insert(v);
  for (const auto& [id, v] : t2.graph().values) gs.insert(v);
  std::vector<Rat> grid(gs.begin(), gs.end());
  Leveled l1(t1.graph(), grid), l2(t2.graph(), grid);
  LeveledMap m;
  int L = static_cast<int>(grid.size());
  m.node_img.assign(L, {});
  m.strand_img.assign(std::max(0, L - 1), {});
  auto image_cell = [&](const Cell& c) -> std::optional<Cell> {
    GPoint x = l1.point_of(c);
    auto [x0, t] = s1.backward(t1.to_source(x));
    GPoint y = s2.forward(x0, t);
    auto kept = t2.from_source(y);
    if (!kept) return std::nullopt;
    return l2.locate(*kept);
  };
  for (int li = 0; li < L; ++li) {
    m.node_img[li].resize(l1.nodes(li).size());
    for (size_t j = 0; j < l1.nodes(li).size(); ++j) {
      auto ic = image_cell(Cell{true, li, static_cast<int>(j)});
      if (!ic) return false;
      m.node_img[li][j] = ic->idx;
    }
  }
  for (int si = 0; si + 1 < L; ++si) {
    m.strand_img[si].resize(l1.strands(si).size());
    for (size_t k = 0; k < l1.strands(si).size(); ++k) {
      auto ic = image_cell(Cell{false, si, static_cast<int>(k)});
      if (!ic) return false;
      m.strand_img[si][k] = ic->idx;
    }
  }
  return leveled_map_valid(l1, l2, m);
}

}  // namespace reeb
