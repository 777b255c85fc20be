#pragma once

#include <map>
#include <optional>
#include <vector>

#include "reeb/field.hpp"
#include "reeb/graph.hpp"
#include "reeb/sweep.hpp"

namespace reeb {

// Path-height metric d_f: min over connecting paths of (max f - min f).
// Exact; nullopt when the points lie in different components.
class PathMetric {
 public:
  explicit PathMetric(const ReebGraph& g);

  std::optional<Rat> distance(const GPoint& u, const GPoint& v) const;

  // Minimal connectivity ranges between two vertices: pairs (lo, hi) with
  // the vertices connected inside f^-1([lo, hi]), Pareto-minimal.
  const std::vector<std::pair<Rat, Rat>>& pareto(int a, int b) const;

 private:
  const ReebGraph g_;
  std::vector<int> ids_;
  std::map<int, int> idx_;
  // pareto_[i][j]: minimal ranges
  std::vector<std::vector<std::vector<std::pair<Rat, Rat>>>> pareto_;
};

std::optional<Rat> path_height_distance(const ReebGraph& g, const GPoint& u, const GPoint& v);

// Exact L_inf distance of two PL functions on a shared complex.
Rat linf_distance(const ScalarField& f, const ScalarField& g);

}  // namespace reeb
