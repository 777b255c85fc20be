#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "reeb/graph.hpp"
#include "reeb/sweep.hpp"

namespace reeb {

// S_eps(R): Reeb graph of R x [-eps, eps] under f(x) + t, built from the
// explicit product complex, together with the quotient correspondence in
// both directions. forward(x, t) is the class [x, t]; backward picks any
// representative of a point of the smoothed graph.
class Smoothing {
 public:
  Smoothing(const ReebGraph& source, const Rat& eps);

  const ReebGraph& source() const { return src_; }
  const ReebGraph& graph() const { return graph_; }
  const Rat& eps() const { return eps_; }

  GPoint forward(const GPoint& x, const Rat& t) const;
  std::pair<GPoint, Rat> backward(const GPoint& s) const;

 private:
  ReebGraph src_;
  Rat eps_;
  ReebGraph graph_;
  // product complex bookkeeping (empty when eps == 0)
  std::unique_ptr<Quotient> quo_;
  std::vector<int> vid_list_;                 // source vertex ids in order
  std::map<int, int> vidx_;                   // id -> dense index
  // product vertex (v,k) = 3*vidx+k ; rows t in {-eps, 0, +eps}
  // product edges: see smoothing.cpp for the layout table
  struct PEdge {
    int kind;  // 0 vertical, 1 horizontal, 2 diagonal
    int a, b;  // for vertical: vertex idx + row k..k+1 ; else source edge + row
    int row;
  };
  std::vector<PEdge> pedges_;
  std::map<std::pair<int, int>, int> vert_edge_;  // (vidx, row) -> product edge
  std::map<std::pair<int, int>, int> horiz_edge_; // (src edge, row) -> product edge
  std::map<std::pair<int, int>, int> diag_edge_;  // (src edge, row) -> product edge

  Rat row_t(int k) const;  // -eps, 0, +eps
  GPoint image_of_product_point(int pedge, const Rat& level) const;
  std::pair<GPoint, Rat> product_point_to_source(int pedge, const Rat& level) const;
};

// The natural map sigma_eps evaluated pointwise: [x, 0].
inline GPoint sigma_point(const Smoothing& s, const GPoint& x) { return s.forward(x, Rat(0)); }

struct SmoothingResult {
  ReebGraph graph;
  std::shared_ptr<Smoothing> detail;
};

SmoothingResult smooth(const ReebGraph& g, const Rat& eps);

// T^tau(R): trims every point lacking height-tau monotone up- and down-paths.
// Keeps exact provenance into the source graph.
class Truncation {
 public:
  Truncation(const ReebGraph& source, const Rat& tau);

  const ReebGraph& source() const { return src_; }
  const ReebGraph& graph() const { return graph_; }

  GPoint to_source(const GPoint& t) const;
  std::optional<GPoint> from_source(const GPoint& s) const;

 private:
  ReebGraph src_;
  Rat tau_;
  ReebGraph graph_;
  // per truncated edge: the source edge and kept interval
  struct Seg {
    int src_edge;
    Rat lo, hi;
  };
  std::vector<Seg> seg_;                    // per truncated edge index
  std::map<int, int> vmap_;                 // truncated vertex -> source vertex (or -1)
  std::map<int, std::pair<int, Rat>> cut_;  // truncated vertex -> (source edge, value)
  std::map<int, int> vmap_rev_;             // source vertex -> truncated vertex
  std::map<int, std::vector<int>> edge_segs_;  // source edge -> truncated edges
};

ReebGraph truncate(const ReebGraph& g, const Rat& tau);
ReebGraph truncated_smooth(const ReebGraph& g, const Rat& eps, const Rat& tau);

// Constructs the natural map S^tau_eps(R) -> S^tau2_eps2(R), defined for
// 0 <= tau2 - tau <= eps2 - eps, and validates it cell by cell. Returns
// false when any image point leaves the truncated target or the cell
// assignment breaks attachment continuity.
bool eta_map_valid(const ReebGraph& g, const Rat& eps, const Rat& tau, const Rat& eps2,
                   const Rat& tau2);

}  // namespace reeb
