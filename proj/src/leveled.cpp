#include "reeb/leveled.hpp"

#include <algorithm>
#include <stdexcept>

namespace reeb {

Leveled::Leveled(const ReebGraph& g, std::vector<Rat> grid) : g_(g), grid_(std::move(grid)) {
  std::sort(grid_.begin(), grid_.end());
  grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
  for (const auto& [id, v] : g_.values) {
    if (!std::binary_search(grid_.begin(), grid_.end(), v))
      throw std::runtime_error("leveled: grid missing a critical value");
  }
  int L = static_cast<int>(grid_.size());
  nodes_.assign(L, {});
  strands_.assign(std::max(0, L - 1), {});

  auto level_of = [&](const Rat& v) {
    return static_cast<int>(std::lower_bound(grid_.begin(), grid_.end(), v) - grid_.begin());
  };

  for (const auto& [id, v] : g_.values) {
    int li = level_of(v);
    vertex_node_map_[id] = {li, static_cast<int>(nodes_[li].size())};
    Node n;
    n.src_vertex = id;
    nodes_[li].push_back(n);
  }
  for (int e = 0; e < g_.edge_count(); ++e) {
    const auto& ed = g_.edges[e];
    const Rat &a = g_.value(ed[0]), &b = g_.value(ed[1]);
    int la = level_of(rat_min(a, b)), lb = level_of(rat_max(a, b));
    for (int li = la + 1; li < lb; ++li) {
      edge_node_at_[{e, li}] = static_cast<int>(nodes_[li].size());
      Node n;
      n.src_edge = e;
      nodes_[li].push_back(n);
    }
    for (int si = la; si < lb; ++si) {
      int lower_idx, upper_idx;
      if (si == la) {
        int lo_vid = (a <= b) ? ed[0] : ed[1];
        lower_idx = vertex_node_map_[lo_vid].second;
      } else {
        lower_idx = edge_node_at_[{e, si}];
      }
      if (si + 1 == lb) {
        int hi_vid = (a <= b) ? ed[1] : ed[0];
        upper_idx = vertex_node_map_[hi_vid].second;
      } else {
        upper_idx = edge_node_at_[{e, si + 1}];
      }
      edge_strand_at_[{e, si}] = static_cast<int>(strands_[si].size());
      Strand s;
      s.lower = lower_idx;
      s.upper = upper_idx;
      s.src_edge = e;
      strands_[si].push_back(s);
    }
  }
}

std::vector<int> Leveled::strand_counts() const {
  std::vector<int> out;
  for (const auto& s : strands_) out.push_back(static_cast<int>(s.size()));
  return out;
}

int Leveled::level_of_value(const Rat& v) const {
  auto it = std::lower_bound(grid_.begin(), grid_.end(), v);
  if (it != grid_.end() && *it == v) return static_cast<int>(it - grid_.begin());
  return -1;
}

Cell Leveled::locate(const GPoint& p0) const {
  GPoint p = normalize_gpoint(g_, p0);
  if (p.vertex >= 0) {
    auto [li, idx] = vertex_node_map_.at(p.vertex);
    return Cell{true, li, idx};
  }
  int li = level_of_value(p.value);
  if (li >= 0) {
    auto it = edge_node_at_.find({p.edge, li});
    if (it == edge_node_at_.end()) throw std::runtime_error("leveled: no node for edge at level");
    return Cell{true, li, it->second};
  }
  auto it = std::upper_bound(grid_.begin(), grid_.end(), p.value);
  int si = static_cast<int>(it - grid_.begin()) - 1;
  if (si < 0 || si + 1 >= level_count()) throw std::runtime_error("leveled: point outside grid");
  auto it2 = edge_strand_at_.find({p.edge, si});
  if (it2 == edge_strand_at_.end()) throw std::runtime_error("leveled: no strand for edge in slab");
  return Cell{false, si, it2->second};
}

GPoint Leveled::point_of(const Cell& c) const {
  if (c.is_node) {
    const Node& n = nodes_[c.level][c.idx];
    if (n.src_vertex >= 0) return GPoint::at_vertex(n.src_vertex, grid_[c.level]);
    return GPoint::on_edge(n.src_edge, grid_[c.level]);
  }
  const Strand& s = strands_[c.level][c.idx];
  Rat mid = (grid_[c.level] + grid_[c.level + 1]) / 2;
  return GPoint::on_edge(s.src_edge, mid);
}

GPoint Leveled::point_at(const Cell& c, const Rat& value) const {
  if (c.is_node) {
    if (value != grid_[c.level]) throw std::runtime_error("leveled: node value mismatch");
    return point_of(c);
  }
  const Strand& s = strands_[c.level][c.idx];
  if (!(grid_[c.level] < value && value < grid_[c.level + 1]))
    throw std::runtime_error("leveled: value outside slab");
  return GPoint::on_edge(s.src_edge, value);
}

int Leveled::node_of_vertex(int vid) const { return vertex_node_map_.at(vid).second; }

bool leveled_map_valid(const Leveled& src, const Leveled& dst, const LeveledMap& m) {
  int L = src.level_count();
  for (int li = 0; li < L; ++li) {
    if (m.node_img[li].size() != src.nodes(li).size()) return false;
    for (int v : m.node_img[li])
      if (v < 0 || v >= static_cast<int>(dst.nodes(li).size())) return false;
  }
  for (int si = 0; si + 1 < L; ++si) {
    if (m.strand_img[si].size() != src.strands(si).size()) return false;
    for (size_t k = 0; k < src.strands(si).size(); ++k) {
      const auto& s = src.strands(si)[k];
      int ti = m.strand_img[si][k];
      if (ti < 0 || ti >= static_cast<int>(dst.strands(si).size())) return false;
      const auto& t = dst.strands(si)[ti];
      if (t.lower != m.node_img[si][s.lower]) return false;
      if (t.upper != m.node_img[si + 1][s.upper]) return false;
    }
  }
  return true;
}

namespace {

struct Enumerator {
  const Leveled& src;
  const Leveled& dst;
  long max_maps;
  bool truncated = false;
  std::vector<LeveledMap> out;
  LeveledMap cur;

  Enumerator(const Leveled& s, const Leveled& d, long mm) : src(s), dst(d), max_maps(mm) {
    int L = s.level_count();
    cur.node_img.assign(L, {});
    cur.strand_img.assign(std::max(0, L - 1), {});
    for (int li = 0; li < L; ++li) cur.node_img[li].assign(s.nodes(li).size(), -1);
    for (int si = 0; si + 1 < L; ++si) cur.strand_img[si].assign(s.strands(si).size(), -1);
  }

  // choose node images at level li, then strands of slab li-1, then recurse
  void nodes_at(int li) {
    if (static_cast<long>(out.size()) >= max_maps) {
      truncated = true;
      return;
    }
    int L = src.level_count();
    if (li == L) {
      out.push_back(cur);
      return;
    }
    choose_node(li, 0);
  }

  void choose_node(int li, size_t j) {
    if (static_cast<long>(out.size()) >= max_maps) {
      truncated = true;
      return;
    }
    if (j == src.nodes(li).size()) {
      if (li == 0) {
        nodes_at(1);
      } else {
        choose_strand(li - 1, 0);
      }
      return;
    }
    for (int cand = 0; cand < static_cast<int>(dst.nodes(li).size()); ++cand) {
      cur.node_img[li][j] = cand;
      choose_node(li, j + 1);
      if (truncated) return;
    }
    cur.node_img[li][j] = -1;
  }

  void choose_strand(int si, size_t k) {
    if (static_cast<long>(out.size()) >= max_maps) {
      truncated = true;
      return;
    }
    if (k == src.strands(si).size()) {
      nodes_at(si + 2);
      return;
    }
    const auto& s = src.strands(si)[k];
    int lo = cur.node_img[si][s.lower];
    int hi = cur.node_img[si + 1][s.upper];
    for (int cand = 0; cand < static_cast<int>(dst.strands(si).size()); ++cand) {
      const auto& t = dst.strands(si)[cand];
      if (t.lower != lo || t.upper != hi) continue;
      cur.strand_img[si][k] = cand;
      choose_strand(si, k + 1);
      if (truncated) return;
    }
    cur.strand_img[si][k] = -1;
  }
};

}  // namespace

std::vector<LeveledMap> enumerate_maps(const Leveled& src, const Leveled& dst,
                                       long max_maps, bool* truncated) {
  // An empty source admits exactly the empty map; an empty target admits
  // maps only from an empty source.
  bool src_empty = src.graph().values.empty();
  bool dst_empty = dst.graph().values.empty();
  if (truncated) *truncated = false;
  if (src_empty) {
    LeveledMap m;
    int L = src.level_count();
    m.node_img.assign(L, {});
    m.strand_img.assign(std::max(0, L - 1), {});
    return {m};
  }
  if (dst_empty) return {};
  Enumerator en(src, dst, max_maps);
  en.nodes_at(0);
  if (truncated) *truncated = en.truncated;
  return en.out;
}

LeveledMap identity_map(const Leveled& l) {
  LeveledMap m;
  int L = l.level_count();
  m.node_img.assign(L, {});
  m.strand_img.assign(std::max(0, L - 1), {});
  for (int li = 0; li < L; ++li) {
    m.node_img[li].resize(l.nodes(li).size());
    for (size_t j = 0; j < l.nodes(li).size(); ++j) m.node_img[li][j] = static_cast<int>(j);
  }
  for (int si = 0; si + 1 < L; ++si) {
    m.strand_img[si].resize(l.strands(si).size());
    for (size_t k = 0; k < l.strands(si).size(); ++k) m.strand_img[si][k] = static_cast<int>(k);
  }
  return m;
}

LeveledMap compose(const Leveled& a, const LeveledMap& f, const Leveled& b,
                   const LeveledMap& g) {
  LeveledMap m;
  int L = a.level_count();
  m.node_img.assign(L, {});
  m.strand_img.assign(std::max(0, L - 1), {});
  for (int li = 0; li < L; ++li) {
    m.node_img[li].resize(a.nodes(li).size());
    for (size_t j = 0; j < a.nodes(li).size(); ++j)
      m.node_img[li][j] = g.node_img[li][f.node_img[li][j]];
  }
  for (int si = 0; si + 1 < L; ++si) {
    m.strand_img[si].resize(a.strands(si).size());
    for (size_t k = 0; k < a.strands(si).size(); ++k)
      m.strand_img[si][k] = g.strand_img[si][f.strand_img[si][k]];
  }
  return m;
}

}  // namespace reeb
