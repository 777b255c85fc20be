#pragma once

#include <map>
#include <optional>

#include "reeb/graph.hpp"

namespace reeb {

// Label- and adjacency-preserving vertex bijection, when one exists.
// With use_labels = false this is plain multigraph isomorphism.
std::optional<std::map<int, int>> isomorphism_witness(const ReebGraph& a, const ReebGraph& b,
                                                      bool use_labels = true);

inline bool is_isomorphic(const ReebGraph& a, const ReebGraph& b, bool use_labels = true) {
  return isomorphism_witness(a, b, use_labels).has_value();
}

// Up to max_count witnesses of unlabeled isomorphism (for edit-search moves).
std::vector<std::map<int, int>> unlabeled_witnesses(const ReebGraph& a, const ReebGraph& b,
                                                    int max_count);

}  // namespace reeb
