#pragma once

#include <array>
#include <map>
#include <vector>

#include "reeb/graph.hpp"
#include "reeb/rational.hpp"

namespace reeb {

// A point of a ReebGraph: a vertex, or an interior point of an edge
// (edge index into graph.edges, value strictly between the endpoints).
struct GPoint {
  int vertex = -1;
  int edge = -1;
  Rat value;

  static GPoint at_vertex(int id, const Rat& v) {
    GPoint p;
    p.vertex = id;
    p.value = v;
    return p;
  }
  static GPoint on_edge(int e, const Rat& v) {
    GPoint p;
    p.edge = e;
    p.value = v;
    return p;
  }
};

// Normalizes (edge, value == endpoint value) to the endpoint vertex.
GPoint normalize_gpoint(const ReebGraph& g, const GPoint& p);
bool gpoint_eq(const ReebGraph& g, const GPoint& a, const GPoint& b);

// Simplicial complex prepared for the level-set sweep. Values need not be
// distinct; flat edges are allowed, flat triangles are not. Triangles are
// given by their three boundary edge indices so parallel edges stay apart.
struct SweepComplex {
  std::vector<Rat> values;                 // per vertex index
  std::vector<std::array<int, 2>> edges;   // vertex indices
  std::vector<std::array<int, 3>> tris;    // boundary edge indices
};

// Location of a quotient cell inside the quotient graph.
struct QLoc {
  int vertex = -1;  // quotient vertex id
  int edge = -1;    // quotient edge index
};

// Exact Reeb quotient of a SweepComplex, with enough provenance to answer
// point queries: which quotient cell contains the image of a complex point.
class Quotient {
 public:
  explicit Quotient(const SweepComplex& cx);

  const ReebGraph& graph() const { return graph_; }
  const std::vector<Rat>& levels() const { return levels_; }

  // Number of level-set components in the open slab (levels[i], levels[i+1]).
  int slab_component_count(int slab) const;

  // Image of a complex point: the point must be specified as either a complex
  // vertex or (complex edge, exact value strictly inside the edge span).
  GPoint image_of_vertex(int cx_vertex) const;
  GPoint image_of_edge_point(int cx_edge, const Rat& value) const;

  // A complex point mapping to the given quotient point (any representative).
  // For quotient edge interiors the representative sits at the same value.
  struct CxPoint {
    int cx_vertex = -1;
    int cx_edge = -1;
    Rat value;  // function value at that complex point
  };
  CxPoint preimage(const GPoint& q) const;

 private:
  struct LevelData;
  struct SlabData;

  int level_index(const Rat& w) const;          // exact match, -1 if absent
  int slab_index(const Rat& w) const;           // levels[i] < w < levels[i+1]
  int level_comp_of_object(int li, int obj) const;

  SweepComplex cx_;
  std::vector<Rat> levels_;
  ReebGraph graph_;

  // per level: object ids are 0..V-1 vertices, V..V+E-1 edge crossings
  std::vector<std::vector<int>> level_comp_;   // object -> comp or -1
  std::vector<std::vector<int>> slab_comp_;    // edge -> comp or -1
  std::vector<int> level_ncomp_, slab_ncomp_;
  std::vector<std::vector<QLoc>> level_loc_, slab_loc_;
  // representative object per (level, comp): vertex (>=0 encoded v) or edge
  // crossing (encoded V + e); per (slab, comp): edge index
  std::vector<std::vector<int>> level_rep_, slab_rep_;
};

// Reeb graph of a PL scalar field (complex of dim <= 2).
struct ScalarField;
ReebGraph build_reeb(const ScalarField& field, bool allow_ties = false);

// Reeb quotient of a labeled multigraph (1-complex), flat edges allowed.
ReebGraph reeb_of_labeled_graph(const std::map<int, Rat>& values,
                                const std::vector<std::array<int, 2>>& edges);

}  // namespace reeb
