#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb {

// Simplicial complex of dimension <= 2 with rational vertex values.
struct ScalarField {
  std::vector<int> vertex_ids;            // sorted, unique
  std::map<int, Rat> values;              // id -> value
  std::vector<std::array<int, 2>> edges;  // unordered pairs, stored u<w
  std::vector<std::array<int, 3>> triangles;

  bool has_vertex(int id) const { return values.count(id) != 0; }
  const Rat& value(int id) const { return values.at(id); }

  // Structural checks: references resolve, complex closed under faces,
  // no degenerate simplices. Throws std::runtime_error with a diagnostic.
  void validate() const;

  // True iff all vertex values are pairwise distinct.
  bool generic() const;

  // Lexicographic tie-break by vertex id: returns a copy whose values are
  // symbolically perturbed into distinct rationals, preserving order.
  ScalarField perturbed() const;
};

ScalarField parse_field(std::istream& in);
ScalarField parse_field_file(const std::string& path);
void serialize_field(const ScalarField& f, std::ostream& out);

}  // namespace reeb
