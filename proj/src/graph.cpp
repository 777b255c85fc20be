#include "reeb/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace reeb {

int ReebGraph::degree(int id) const {
  int d = 0;
  for (const auto& e : edges) d += (e[0] == id) + (e[1] == id);
  return d;
}

int ReebGraph::up_degree(int id) const {
  int d = 0;
  for (const auto& e : edges) {
    int other = -1;
    if (e[0] == id) other = e[1];
    else if (e[1] == id) other = e[0];
    else continue;
    if (value(other) > value(id)) ++d;
    else if (value(other) == value(id) && other > id) ++d;  // flat tie-break
  }
  return d;
}

int ReebGraph::down_degree(int id) const { return degree(id) - up_degree(id); }

std::vector<Rat> ReebGraph::critical_values() const {
  std::set<Rat> s;
  for (const auto& [id, v] : values) s.insert(v);
  return {s.begin(), s.end()};
}

std::vector<int> ReebGraph::component_of() const {
  std::vector<int> ids;
  for (const auto& [id, v] : values) ids.push_back(id);
  std::map<int, int> idx;
  for (size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<int>(i);
  std::vector<int> parent(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : edges) {
    int a = find(idx[e[0]]), b = find(idx[e[1]]);
    if (a != b) parent[a] = b;
  }
  std::map<int, int> remap;
  std::vector<int> comp(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (!remap.count(r)) remap[r] = static_cast<int>(remap.size());
    comp[i] = remap[r];
  }
  return comp;
}

int ReebGraph::component_count() const {
  if (values.empty()) return 0;
  auto comp = component_of();
  int m = 0;
  for (int c : comp) m = std::max(m, c + 1);
  return m;
}

int ReebGraph::betti1() const {
  if (values.empty()) return 0;
  return edge_count() - vertex_count() + component_count();
}

Rat ReebGraph::min_value() const {
  if (values.empty()) throw std::runtime_error("empty graph has no min");
  Rat m = values.begin()->second;
  for (const auto& [id, v] : values) m = rat_min(m, v);
  return m;
}

Rat ReebGraph::max_value() const {
  if (values.empty()) throw std::runtime_error("empty graph has no max");
  Rat m = values.begin()->second;
  for (const auto& [id, v] : values) m = rat_max(m, v);
  return m;
}

bool ReebGraph::generic() const {
  std::set<Rat> seen;
  for (const auto& [id, v] : values)
    if (!seen.insert(v).second) return false;
  return true;
}

void ReebGraph::validate(bool allow_flat) const {
  for (const auto& e : edges) {
    if (!has_vertex(e[0]) || !has_vertex(e[1]))
      throw std::runtime_error("reeb: edge references missing vertex");
    if (e[0] == e[1]) throw std::runtime_error("reeb: self-loop edge");
    if (!allow_flat && value(e[0]) == value(e[1]))
      throw std::runtime_error("reeb: flat edge (equal endpoint values)");
  }
}

int ReebGraph::fresh_id() const {
  int m = 0;
  for (const auto& [id, v] : values) m = std::max(m, id + 1);
  return m;
}

ReebGraph canonicalize(const ReebGraph& g) {
  // Drop regular degree-2 vertices: exactly one up-edge and one down-edge,
  // both non-flat. Then relabel ids by (value, old id).
  ReebGraph work = g;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [id, v] : work.values) {
      std::vector<int> nbr;
      std::vector<size_t> eidx;
      for (size_t i = 0; i < work.edges.size(); ++i) {
        const auto& e = work.edges[i];
        if (e[0] == id || e[1] == id) {
          nbr.push_back(e[0] == id ? e[1] : e[0]);
          eidx.push_back(i);
        }
      }
      if (nbr.size() != 2) continue;
      const Rat& a = work.value(nbr[0]);
      const Rat& b = work.value(nbr[1]);
      bool one_up_one_down = (a < v && v < b) || (b < v && v < a);
      if (!one_up_one_down) continue;
      // splice
      std::array<int, 2> ne = {std::min(nbr[0], nbr[1]), std::max(nbr[0], nbr[1])};
      std::vector<std::array<int, 2>> edges2;
      for (size_t i = 0; i < work.edges.size(); ++i)
        if (i != eidx[0] && i != eidx[1]) edges2.push_back(work.edges[i]);
      edges2.push_back(ne);
      work.edges = std::move(edges2);
      work.values.erase(id);
      changed = true;
      break;
    }
  }
  // deterministic relabel onto the surviving id set, so ids already sorted
  // by value stay fixed and external references survive
  std::vector<std::pair<Rat, int>> order;
  std::vector<int> pool;
  for (const auto& [id, v] : work.values) {
    order.push_back({v, id});
    pool.push_back(id);
  }
  std::sort(order.begin(), order.end());
  std::sort(pool.begin(), pool.end());
  std::map<int, int> remap;
  for (size_t i = 0; i < order.size(); ++i) remap[order[i].second] = pool[i];
  ReebGraph out;
  for (const auto& [v, id] : order) out.values[remap[id]] = v;
  for (const auto& e : work.edges) {
    int a = remap[e[0]], b = remap[e[1]];
    if (work.value(e[0]) > work.value(e[1]) ||
        (work.value(e[0]) == work.value(e[1]) && a > b))
      std::swap(a, b);
    out.edges.push_back({a, b});
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

ReebGraph parse_reeb(std::istream& in) {
  ReebGraph g;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "reeb") throw std::runtime_error("reeb: missing 'reeb 1' header");
      int ver = 0;
      ls >> ver;
      if (ver != 1) throw std::runtime_error("reeb: unsupported version");
      header = true;
      continue;
    }
    if (tag == "v") {
      int id;
      std::string val;
      if (!(ls >> id >> val)) throw std::runtime_error("reeb: bad vertex line " + std::to_string(lineno));
      auto r = parse_rat(val);
      if (!r) throw std::runtime_error("reeb: bad value '" + val + "'");
      if (g.values.count(id)) throw std::runtime_error("reeb: duplicate vertex id");
      g.values[id] = *r;
    } else if (tag == "e") {
      int u, w, mult = 1;
      if (!(ls >> u >> w)) throw std::runtime_error("reeb: bad edge line " + std::to_string(lineno));
      ls >> mult;
      if (mult < 1) throw std::runtime_error("reeb: bad multiplicity");
      for (int i = 0; i < mult; ++i) g.edges.push_back({u, w});
    } else {
      throw std::runtime_error("reeb: unknown tag '" + tag + "'");
    }
  }
  if (!header) throw std::runtime_error("reeb: empty input");
  // normalize edge orientation lower-value first
  for (auto& e : g.edges) {
    if (!g.has_vertex(e[0]) || !g.has_vertex(e[1]))
      throw std::runtime_error("reeb: edge references missing vertex");
    if (g.value(e[0]) > g.value(e[1]) ||
        (g.value(e[0]) == g.value(e[1]) && e[0] > e[1]))
      std::swap(e[0], e[1]);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.validate(true);
  return g;
}

ReebGraph parse_reeb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_reeb(in);
}

void serialize_reeb(const ReebGraph& g, std::ostream& out) {
  out << "reeb 1\n";
  for (const auto& [id, v] : g.values) out << "v " << id << " " << rat_to_string(v) << "\n";
  std::map<std::array<int, 2>, int> mult;
  for (const auto& e : g.edges) mult[e]++;
  for (const auto& [e, m] : mult) out << "e " << e[0] << " " << e[1] << " " << m << "\n";
}

}  // namespace reeb
