#include "reeb/persistence.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reeb/rational.hpp"

namespace reeb {

const char* pclass_name(PClass c) {
  switch (c) {
    case PClass::Ord0: return "ord0";
    case PClass::Ext0: return "ext0";
    case PClass::Rel1: return "rel1";
    case PClass::Ext1: return "ext1";
  }
  return "?";
}

std::vector<PPoint> Diagram::of_class(PClass c) const {
  std::vector<PPoint> out;
  for (const auto& p : points)
    if (p.cls == c) out.push_back(p);
  return out;
}

void Diagram::sort() { std::sort(points.begin(), points.end()); }

bool Diagram::operator==(const Diagram& o) const {
  auto a = points, b = o.points;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
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
};

// Sublevel merge events: per merge, (younger component's birth, merge value).
std::vector<std::pair<Rat, Rat>> sweep_merges(const ReebGraph& g, bool descending) {
  std::vector<std::pair<Rat, int>> order;
  for (const auto& [id, v] : g.values) order.push_back({v, id});
  std::sort(order.begin(), order.end());
  if (descending) std::reverse(order.begin(), order.end());
  std::map<int, int> idx;
  for (size_t i = 0; i < order.size(); ++i) idx[order[i].second] = static_cast<int>(i);
  UF uf(static_cast<int>(order.size()));
  std::vector<Rat> birth(order.size());  // per root
  std::vector<char> seen(order.size(), 0);
  std::vector<std::pair<Rat, Rat>> out;
  auto before = [&](const Rat& a, const Rat& b) { return descending ? a > b : a < b; };
  for (const auto& [val, id] : order) {
    int i = idx[id];
    seen[i] = 1;
    birth[i] = val;
    for (const auto& e : g.edges) {
      int other = -1;
      if (e[0] == id) other = e[1];
      else if (e[1] == id) other = e[0];
      else continue;
      int j = idx[other];
      if (!seen[j]) continue;
      int ri = uf.find(i), rj = uf.find(j);
      if (ri == rj) continue;
      // elder rule: the younger (later-born) class dies now
      Rat bi = birth[ri], bj = birth[rj];
      Rat young = before(bi, bj) ? bj : bi;
      Rat old_b = before(bi, bj) ? bi : bj;
      out.push_back({young, val});
      uf.p[ri] = rj;
      birth[uf.find(rj)] = old_b;
    }
  }
  return out;
}

// max d such that the subgraph on f >= d has a cycle; nullopt if acyclic
std::optional<Rat> max_cycle_floor(const std::map<int, Rat>& values,
                                   const std::vector<std::array<int, 2>>& edges) {
  std::vector<Rat> cand;
  for (const auto& [id, v] : values) cand.push_back(v);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::optional<Rat> best;
  for (const Rat& d : cand) {
    // induced subgraph on f >= d
    std::map<int, int> idx;
    int n = 0;
    for (const auto& [id, v] : values)
      if (v >= d) idx[id] = n++;
    int m = 0;
    UF uf(n);
    int comps = n;
    for (const auto& e : edges) {
      auto a = idx.find(e[0]), b = idx.find(e[1]);
      if (a == idx.end() || b == idx.end()) continue;
      ++m;
      int ra = uf.find(a->second), rb = uf.find(b->second);
      if (ra != rb) {
        uf.p[ra] = rb;
        --comps;
      }
    }
    if (m - n + comps > 0) {
      if (!best || d > *best) best = d;
    }
  }
  return best;
}

// beta1 of the subgraph induced on d <= f <= b
int betti_range(const std::map<int, Rat>& values, const std::vector<std::array<int, 2>>& edges,
                const Rat& d, const Rat& b) {
  std::map<int, int> idx;
  int n = 0;
  for (const auto& [id, v] : values)
    if (v >= d && v <= b) idx[id] = n++;
  UF uf(n);
  int m = 0, comps = n;
  for (const auto& e : edges) {
    auto a = idx.find(e[0]), c = idx.find(e[1]);
    if (a == idx.end() || c == idx.end()) continue;
    ++m;
    int ra = uf.find(a->second), rc = uf.find(c->second);
    if (ra != rc) {
      uf.p[ra] = rc;
      --comps;
    }
  }
  return m - n + comps;
}

}  // namespace

Diagram extended_diagram(const ReebGraph& g) {
  if (!g.generic())
    throw std::runtime_error("diagram: non-generic graph (repeated values)");
  Diagram d;
  d.component_count = g.component_count();
  if (g.values.empty()) return d;

  for (auto& [young, at] : sweep_merges(g, false))
    if (young != at) d.points.push_back(PPoint{young, at, PClass::Ord0});
  for (auto& [young, at] : sweep_merges(g, true))
    if (young != at) d.points.push_back(PPoint{young, at, PClass::Rel1});

  // Ext0: per component (min, max)
  std::vector<int> ids;
  for (const auto& [id, v] : g.values) ids.push_back(id);
  auto comp = g.component_of();
  std::map<int, std::pair<Rat, Rat>> extent;
  for (size_t i = 0; i < ids.size(); ++i) {
    const Rat& v = g.value(ids[i]);
    auto it = extent.find(comp[i]);
    if (it == extent.end())
      extent[comp[i]] = {v, v};
    else {
      it->second.first = rat_min(it->second.first, v);
      it->second.second = rat_max(it->second.second, v);
    }
  }
  for (auto& [c, mm] : extent) d.points.push_back(PPoint{mm.first, mm.second, PClass::Ext0});

  // Ext1: iterative thinnest-cycle extraction
  std::map<int, Rat> values = g.values;
  std::vector<std::array<int, 2>> edges = g.edges;
  while (true) {
    auto dstar = max_cycle_floor(values, edges);
    if (!dstar) break;
    // smallest top b such that [d*, b] contains a cycle
    std::vector<Rat> cand;
    for (const auto& [id, v] : values)
      if (v > *dstar) cand.push_back(v);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    Rat bstar;
    bool found = false;
    for (const Rat& b : cand) {
      if (betti_range(values, edges, *dstar, b) > 0) {
        bstar = b;
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("diagram: cycle extraction inconsistency");
    d.points.push_back(PPoint{bstar, *dstar, PClass::Ext1});
    // cut: find a cycle within [d*, b*] and remove one of its edges
    // incident to its top vertex
    std::map<int, std::vector<std::pair<int, int>>> adj;  // vid -> (edge idx, other)
    for (size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (values.count(e[0]) && values.count(e[1]) && values[e[0]] >= *dstar &&
          values[e[0]] <= bstar && values[e[1]] >= *dstar && values[e[1]] <= bstar) {
        adj[e[0]].push_back({static_cast<int>(i), e[1]});
        adj[e[1]].push_back({static_cast<int>(i), e[0]});
      }
    }
    // DFS for a cycle
    std::map<int, int> state;  // 0 unseen, 1 active, 2 done
    std::map<int, std::pair<int, int>> par;  // vid -> (parent vid, via edge)
    std::vector<int> cyc_edges;
    std::function<bool(int, int)> dfs = [&](int v, int via) -> bool {
      state[v] = 1;
      for (auto& [ei, o] : adj[v]) {
        if (ei == via) {
          via = -2;  // allow a second parallel edge to close a 2-cycle
          continue;
        }
        if (state[o] == 1) {
          // back edge: cycle found; collect path v..o plus edge ei
          cyc_edges.push_back(ei);
          int x = v;
          while (x != o) {
            cyc_edges.push_back(par[x].second);
            x = par[x].first;
          }
          return true;
        }
        if (state[o] == 0) {
          par[o] = {v, ei};
          if (dfs(o, ei)) return true;
        }
      }
      state[v] = 2;
      return false;
    };
    bool got = false;
    for (auto& [v, _] : adj) {
      if (state[v] == 0) {
        par[v] = {-1, -1};
        if (dfs(v, -1)) {
          got = true;
          break;
        }
      }
    }
    if (!got) throw std::runtime_error("diagram: expected a cycle");
    // remove a cycle edge incident to the top vertex of the cycle
    Rat top(-1);
    bool first = true;
    for (int ei : cyc_edges) {
      for (int end : {0, 1}) {
        const Rat& v = values[edges[ei][end]];
        if (first || v > top) {
          top = v;
          first = false;
        }
      }
    }
    int remove = -1;
    for (int ei : cyc_edges)
      if (values[edges[ei][0]] == top || values[edges[ei][1]] == top) {
        remove = ei;
        break;
      }
    edges.erase(edges.begin() + remove);
  }

  d.sort();
  return d;
}

Diagram extended_diagram_oracle(const ReebGraph& g) {
  if (!g.generic())
    throw std::runtime_error("diagram: non-generic graph (repeated values)");
  Diagram d;
  d.component_count = g.component_count();
  if (g.values.empty()) return d;

  // Simplices of the coned filtration. The cone point enters first, so each
  // component's essential class dies at its own maximum in the down sweep.
  struct Simp {
    int dim;          // 0 or 1 or 2
    int part;         // 0 cone point, 1 ascending, 2 relative (cone) part
    Rat key;          // filtration key within the part
    int a = -1, b = -1;  // faces by simplex index (filled later)
    int tag = 0;      // disambiguator
    Rat value;        // function value used for diagram coordinates
  };

  std::vector<int> ids;
  for (const auto& [id, v] : g.values) ids.push_back(id);
  std::map<int, int> vsimp;  // vertex id -> simplex index (ascending part)

  struct Entry {
    int part, dim;
    Rat order_key;  // ascending sort key
    int kind;       // 0 omega, 1 vertex, 2 edge, 3 cone-vertex, 4 cone-edge
    int ref;        // vertex id or edge index
    Rat value;
  };
  std::vector<Entry> entries;
  entries.push_back(Entry{0, 0, Rat(0), 0, -1, Rat(0)});  // omega
  for (int id : ids) entries.push_back(Entry{1, 0, g.value(id), 1, id, g.value(id)});
  for (int e = 0; e < g.edge_count(); ++e) {
    Rat key = rat_max(g.value(g.edges[e][0]), g.value(g.edges[e][1]));
    entries.push_back(Entry{1, 1, key, 2, e, key});
  }
  for (int id : ids) entries.push_back(Entry{2, 1, -g.value(id), 3, id, g.value(id)});
  for (int e = 0; e < g.edge_count(); ++e) {
    Rat key = rat_min(g.value(g.edges[e][0]), g.value(g.edges[e][1]));
    entries.push_back(Entry{2, 2, -key, 4, e, key});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.part != y.part) return x.part < y.part;
    if (x.order_key != y.order_key) return x.order_key < y.order_key;
    return x.dim < y.dim;
  });

  std::map<int, int> vertex_col, cone_vertex_col;
  std::map<int, int> edge_col;
  int omega_col = -1;
  std::vector<std::vector<int>> boundary(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    const Entry& en = entries[i];
    switch (en.kind) {
      case 0:
        omega_col = static_cast<int>(i);
        break;
      case 1:
        vertex_col[en.ref] = static_cast<int>(i);
        break;
      case 2: {
        edge_col[en.ref] = static_cast<int>(i);
        boundary[i] = {vertex_col.at(g.edges[en.ref][0]), vertex_col.at(g.edges[en.ref][1])};
        break;
      }
      case 3: {
        cone_vertex_col[en.ref] = static_cast<int>(i);
        boundary[i] = {omega_col, vertex_col.at(en.ref)};
        break;
      }
      case 4: {
        boundary[i] = {edge_col.at(en.ref), cone_vertex_col.at(g.edges[en.ref][0]),
                       cone_vertex_col.at(g.edges[en.ref][1])};
        break;
      }
    }
    std::sort(boundary[i].begin(), boundary[i].end());
  }

  // standard Z2 column reduction
  const int N = static_cast<int>(entries.size());
  std::vector<int> owner(N, -1);  // pivot row -> column
  std::vector<std::set<int>> col(N);
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < N; ++j) {
    col[j] = std::set<int>(boundary[j].begin(), boundary[j].end());
    while (!col[j].empty()) {
      int piv = *col[j].rbegin();
      if (owner[piv] < 0) {
        owner[piv] = j;
        pairs.push_back({piv, j});
        break;
      }
      // symmetric difference with the owning column
      for (int r : col[owner[piv]]) {
        auto it = col[j].find(r);
        if (it != col[j].end())
          col[j].erase(it);
        else
          col[j].insert(r);
      }
    }
  }

  for (auto& [i, j] : pairs) {
    const Entry &bs = entries[i], &ds = entries[j];
    if (bs.kind == 1 && ds.kind == 2) {
      if (bs.value != ds.value) d.points.push_back(PPoint{bs.value, ds.value, PClass::Ord0});
    } else if (bs.kind == 1 && ds.kind == 3) {
      d.points.push_back(PPoint{bs.value, ds.value, PClass::Ext0});
    } else if (bs.kind == 2 && ds.kind == 4) {
      d.points.push_back(PPoint{bs.value, ds.value, PClass::Ext1});
    } else if (bs.kind == 3 && ds.kind == 4) {
      if (bs.value != ds.value) d.points.push_back(PPoint{bs.value, ds.value, PClass::Rel1});
    }
    // pairs involving omega are cone artifacts
  }
  d.sort();
  return d;
}

std::vector<Block> diagram_to_blocks(const Diagram& d) {
  std::vector<Block> out;
  for (const auto& p : d.points) {
    Block b;
    b.low = rat_min(p.birth, p.death);
    b.high = rat_max(p.birth, p.death);
    switch (p.cls) {
      case PClass::Ext0: b.kind = BlockKind::ClosedClosed; break;
      case PClass::Ord0: b.kind = BlockKind::ClosedOpen; break;
      case PClass::Rel1: b.kind = BlockKind::OpenClosed; break;
      case PClass::Ext1: b.kind = BlockKind::OpenOpen; break;
    }
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagram parse_dgm(std::istream& in) {
  Diagram d;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "dgm") throw std::runtime_error("dgm: missing 'dgm 1' header");
      int ver;
      ls >> ver;
      if (ver != 1) throw std::runtime_error("dgm: unsupported version");
      header = true;
      continue;
    }
    if (tag == "p") {
      std::string cls, b, dd;
      if (!(ls >> cls >> b >> dd)) throw std::runtime_error("dgm: bad point line");
      PPoint p;
      if (cls == "ord0") p.cls = PClass::Ord0;
      else if (cls == "ext0") p.cls = PClass::Ext0;
      else if (cls == "rel1") p.cls = PClass::Rel1;
      else if (cls == "ext1") p.cls = PClass::Ext1;
      else throw std::runtime_error("dgm: unknown class " + cls);
      auto rb = parse_rat(b), rd = parse_rat(dd);
      if (!rb || !rd) throw std::runtime_error("dgm: bad coordinates");
      p.birth = *rb;
      p.death = *rd;
      d.points.push_back(p);
    } else {
      throw std::runtime_error("dgm: unknown tag " + tag);
    }
  }
  if (!header) throw std::runtime_error("dgm: empty input");
  d.component_count = static_cast<int>(d.of_class(PClass::Ext0).size());
  d.sort();
  return d;
}

Diagram parse_dgm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dgm(in);
}

void serialize_dgm(const Diagram& d, std::ostream& out) {
  out << "dgm 1\n";
  auto pts = d.points;
  std::sort(pts.begin(), pts.end());
  for (const auto& p : pts)
    out << "p " << pclass_name(p.cls) << " " << rat_to_string(p.birth) << " "
        << rat_to_string(p.death) << "\n";
}

}  // namespace reeb
