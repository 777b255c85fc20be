#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb {

// Combinatorial Reeb graph: labeled multigraph, vertex labels = function
// values. Edges carry nothing; interior points are parameterized linearly
// by the function between the endpoint values.
struct ReebGraph {
  std::map<int, Rat> values;               // id -> value
  std::vector<std::array<int, 2>> edges;   // multiset; stored lower-value id first

  int vertex_count() const { return static_cast<int>(values.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_vertex(int id) const { return values.count(id) != 0; }
  const Rat& value(int id) const { return values.at(id); }

  int degree(int id) const;
  int up_degree(int id) const;    // edges toward larger values
  int down_degree(int id) const;  // edges toward smaller values

  std::vector<Rat> critical_values() const;  // sorted, unique
  int component_count() const;
  std::vector<int> component_of() const;     // per sorted-vertex index
  int betti1() const;                        // E - V + components

  Rat min_value() const;  // throws if empty
  Rat max_value() const;

  // True if no two vertices share a value and no edge is flat.
  bool generic() const;

  // Structural validation (edge endpoints exist, no flat edges unless
  // allow_flat). Throws std::runtime_error on violation.
  void validate(bool allow_flat = false) const;

  int fresh_id() const;
};

// Removes regular degree-2 vertices (one up-edge, one down-edge), relabels
// ids deterministically by (value, original id). Idempotent.
ReebGraph canonicalize(const ReebGraph& g);

ReebGraph parse_reeb(std::istream& in);
ReebGraph parse_reeb_file(const std::string& path);
void serialize_reeb(const ReebGraph& g, std::ostream& out);

// Exact max over shared vertices of |f - g|; throws if complexes differ.
struct ScalarField;

}  // namespace reeb
