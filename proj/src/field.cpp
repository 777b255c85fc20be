#include "reeb/field.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace reeb {

void ScalarField::validate() const {
  std::set<std::array<int, 2>> edge_set;
  for (const auto& e : edges) {
    if (!has_vertex(e[0]) || !has_vertex(e[1]))
      throw std::runtime_error("field: edge references missing vertex");
    if (e[0] == e[1]) throw std::runtime_error("field: degenerate edge");
    int a = std::min(e[0], e[1]), b = std::max(e[0], e[1]);
    edge_set.insert({a, b});
  }
  for (const auto& t : triangles) {
    if (!has_vertex(t[0]) || !has_vertex(t[1]) || !has_vertex(t[2]))
      throw std::runtime_error("field: triangle references missing vertex");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw std::runtime_error("field: degenerate triangle");
    // closure under faces
    int v[3] = {t[0], t[1], t[2]};
    std::sort(v, v + 3);
    std::array<int, 2> faces[3] = {{v[0], v[1]}, {v[0], v[2]}, {v[1], v[2]}};
    for (auto& f : faces)
      if (!edge_set.count(f))
        throw std::runtime_error("field: triangle face missing from edge list");
  }
}

bool ScalarField::generic() const {
  std::set<Rat> seen;
  for (const auto& [id, v] : values)
    if (!seen.insert(v).second) return false;
  return true;
}

ScalarField ScalarField::perturbed() const {
  // Order by (value, id); reassign strictly increasing values spaced inside
  // the original gaps so order relations with distinct values survive.
  std::vector<std::pair<Rat, int>> order;
  for (const auto& [id, v] : values) order.push_back({v, id});
  std::sort(order.begin(), order.end());
  ScalarField out = *this;
  // Smallest positive gap between distinct values bounds the jitter.
  Rat gap(1);
  for (size_t i = 1; i < order.size(); ++i) {
    Rat d = order[i].first - order[i - 1].first;
    if (d > 0 && d < gap) gap = d;
  }
  Rat step = gap / Rat(static_cast<int>(order.size()) + 1);
  int k = 0;
  for (auto& [v, id] : order) {
    out.values[id] = v + step * k;
    ++k;
  }
  return out;
}

ScalarField parse_field(std::istream& in) {
  ScalarField f;
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
      if (tag != "field" ) throw std::runtime_error("field: missing 'field 1' header");
      int ver = 0;
      ls >> ver;
      if (ver != 1) throw std::runtime_error("field: unsupported version");
      header = true;
      continue;
    }
    if (tag == "v") {
      int id;
      std::string val;
      if (!(ls >> id >> val)) throw std::runtime_error("field: bad vertex line " + std::to_string(lineno));
      auto r = parse_rat(val);
      if (!r) throw std::runtime_error("field: bad value '" + val + "'");
      if (f.values.count(id)) throw std::runtime_error("field: duplicate vertex id");
      f.values[id] = *r;
      f.vertex_ids.push_back(id);
    } else if (tag == "e") {
      int u, w;
      if (!(ls >> u >> w)) throw std::runtime_error("field: bad edge line " + std::to_string(lineno));
      f.edges.push_back({std::min(u, w), std::max(u, w)});
    } else if (tag == "t") {
      int a, b, c;
      if (!(ls >> a >> b >> c)) throw std::runtime_error("field: bad triangle line " + std::to_string(lineno));
      int v[3] = {a, b, c};
      std::sort(v, v + 3);
      f.triangles.push_back({v[0], v[1], v[2]});
    } else {
      throw std::runtime_error("field: unknown tag '" + tag + "'");
    }
  }
  if (!header) throw std::runtime_error("field: empty input");
  std::sort(f.vertex_ids.begin(), f.vertex_ids.end());
  f.validate();
  return f;
}

ScalarField parse_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_field(in);
}

void serialize_field(const ScalarField& f, std::ostream& out) {
  out << "field 1\n";
  for (const auto& [id, v] : f.values) out << "v " << id << " " << rat_to_string(v) << "\n";
  auto edges = f.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) out << "e " << e[0] << " " << e[1] << "\n";
  auto tris = f.triangles;
  std::sort(tris.begin(), tris.end());
  for (const auto& t : tris) out << "t " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

}  // namespace reeb
