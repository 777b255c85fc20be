#pragma once

#include <optional>
#include <vector>

#include "reeb/graph.hpp"
#include "reeb/sweep.hpp"

namespace reeb {

// A cell of a leveled graph: a node at a grid level or a strand in a slab.
struct Cell {
  bool is_node = true;
  int level = -1;  // level index for nodes, slab index for strands
  int idx = -1;

  bool operator==(const Cell& o) const {
    return is_node == o.is_node && level == o.level && idx == o.idx;
  }
  bool operator!=(const Cell& o) const { return !(*this == o); }
};

// A Reeb graph refined onto a shared level grid: nodes at grid values, one
// strand per edge segment between consecutive levels.
class Leveled {
 public:
  struct Node {
    int src_vertex = -1;  // original vertex, or
    int src_edge = -1;    // crossing of this edge at the grid level
  };
  struct Strand {
    int lower = -1, upper = -1;  // node indices at bounding levels
    int src_edge = -1;
  };

  Leveled() = default;
  // grid must contain every critical value of g.
  Leveled(const ReebGraph& g, std::vector<Rat> grid);

  const ReebGraph& graph() const { return g_; }
  const std::vector<Rat>& grid() const { return grid_; }
  int level_count() const { return static_cast<int>(grid_.size()); }
  const std::vector<Node>& nodes(int level) const { return nodes_[level]; }
  const std::vector<Strand>& strands(int slab) const { return strands_[slab]; }

  std::vector<int> strand_counts() const;

  // Locates a point of the underlying graph. Node cells for points at grid
  // values, strand cells inside slabs.
  Cell locate(const GPoint& p) const;

  // Representative point: the exact node point, or the slab midpoint.
  GPoint point_of(const Cell& c) const;
  // Point of the cell at a prescribed value (must lie in the cell's span).
  GPoint point_at(const Cell& c, const Rat& value) const;

  int node_of_vertex(int vid) const;  // index at its level
  int level_of_value(const Rat& v) const;

 private:
  ReebGraph g_;
  std::vector<Rat> grid_;
  std::vector<std::vector<Node>> nodes_;
  std::vector<std::vector<Strand>> strands_;
  std::vector<std::pair<int, int>> vertex_node_;          // vid -> (level, idx) dense by map
  std::map<int, std::pair<int, int>> vertex_node_map_;
  std::map<std::pair<int, int>, int> edge_node_at_;       // (edge, level) -> idx
  std::map<std::pair<int, int>, int> edge_strand_at_;     // (edge, slab) -> idx
};

// Function-preserving map between two leveled graphs on the same grid,
// given by per-level node images and per-slab strand images.
struct LeveledMap {
  std::vector<std::vector<int>> node_img;
  std::vector<std::vector<int>> strand_img;

  Cell apply(const Cell& c) const {
    if (c.is_node) return Cell{true, c.level, node_img[c.level][c.idx]};
    return Cell{false, c.level, strand_img[c.level][c.idx]};
  }
  bool operator==(const LeveledMap& o) const {
    return node_img == o.node_img && strand_img == o.strand_img;
  }
};

// Checks attachment compatibility (continuity) of a candidate map.
bool leveled_map_valid(const Leveled& src, const Leveled& dst, const LeveledMap& m);

// All function-preserving maps src -> dst determined by grid assignments.
// Stops after max_maps (budget guard); sets truncated if the space was cut.
std::vector<LeveledMap> enumerate_maps(const Leveled& src, const Leveled& dst,
                                       long max_maps, bool* truncated = nullptr);

LeveledMap identity_map(const Leveled& l);
LeveledMap compose(const Leveled& a, const LeveledMap& f, const Leveled& b,
                   const LeveledMap& g);  // g after f

}  // namespace reeb
