#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "reeb/graph.hpp"
#include "reeb/interleave.hpp"

namespace reeb {

enum class DefKind { Birth, Death, Relabel, K1, K2, K3 };

const char* defkind_name(DefKind k);

struct Deformation {
  DefKind kind;
  // Birth: bisect edge (edge_u, edge_w, edge_copy) with a new degree-3 root
  // and a new leaf tip. Zero-height births are the delta -> 0 limit.
  int edge_u = -1, edge_w = -1, edge_copy = 0;
  int root_id = -1, tip_id = -1;
  Rat root_value, tip_value;
  // Death: remove the leaf (root_id, tip_id)
  // Relabel: assignments
  std::vector<std::pair<int, Rat>> relabel;
  // K-type: the adjacent degree-3 pair and their new values
  int k_u1 = -1, k_u2 = -1;
  Rat k_v1, k_v2;
};

// Applies one deformation; throws on violated preconditions. Limit mode
// (always on) admits flat transient leaves and value ties, which arise as
// the delta -> 0 limits of the paper-style sequences.
ReebGraph apply(const Deformation& step, const ReebGraph& g);

Deformation inverse(const Deformation& step, const ReebGraph& before);

Rat deformation_cost(const Deformation& step);

struct EditSequence {
  ReebGraph start;
  std::vector<Deformation> steps;
};

Rat sequence_cost(const EditSequence& s);
ReebGraph sequence_result(const EditSequence& s);

struct EditSearchResult {
  Bracket bracket;             // [d_B, best found]
  bool grid_optimal = false;   // search exhausted all cheaper grid states
  std::optional<EditSequence> best;
};

// Best-first search over canonicalized states with relabel targets on the
// grid (critical values of both graphs plus midpoints).
EditSearchResult edit_search(const ReebGraph& a, const ReebGraph& b, long node_budget);

// d_E preconditions: equal first Betti numbers and component counts.
bool edit_distance_defined(const ReebGraph& a, const ReebGraph& b, std::string* reason);

EditSequence parse_seq(std::istream& in);
EditSequence parse_seq_file(const std::string& path);
void serialize_seq(const EditSequence& s, std::ostream& out);

}  // namespace reeb
