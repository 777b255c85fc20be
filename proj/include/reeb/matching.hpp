#pragma once

#include <optional>
#include <set>
#include <vector>

#include "reeb/persistence.hpp"

namespace reeb {

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // indices into d1.points / d2.points
  std::vector<int> unmatched1, unmatched2;
};

// max over matched l_inf distances and unmatched half-persistences
Rat matching_cost(const Diagram& d1, const Diagram& d2, const Matching& m);

Rat linf_pp(const PPoint& a, const PPoint& b);
Rat half_persistence(const PPoint& p);

// Exact optimum over diagonal-augmented matchings, class labels ignored.
Rat bottleneck_ungraded(const Diagram& d1, const Diagram& d2);
// Max over the four classwise ungraded bottlenecks.
Rat bottleneck_graded(const Diagram& d1, const Diagram& d2);
// Restricted to one class.
Rat bottleneck_class(const Diagram& d1, const Diagram& d2, PClass c);

// Brute force over all matchings (small diagrams; test oracle).
Rat bottleneck_bruteforce(const Diagram& d1, const Diagram& d2);

struct WassersteinResult {
  Rat total_q;   // sum of q-th powers (exact when q integral)
  double value;  // total_q^(1/q)
  bool exact;    // assignment solved in exact arithmetic
};

WassersteinResult wasserstein(const Diagram& d1, const Diagram& d2, const Rat& q, bool graded);

}  // namespace reeb
