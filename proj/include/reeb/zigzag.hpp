#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "reeb/edit.hpp"
#include "reeb/graph.hpp"
#include "reeb/interleave.hpp"

namespace reeb {

// A space node of a zigzag diagram: one 1-complex carrying two labelings.
// The Reeb quotients of (X, left) and (X, right) are the neighboring Reeb
// nodes; the quotient maps are canonical.
struct ZigzagX {
  std::map<int, Rat> left, right;
  std::vector<std::array<int, 2>> edges;
};

struct ZigzagCertificate {
  std::vector<ZigzagX> xs;  // X_1 .. X_{n-1}

  // Reeb nodes derived from the labelings.
  std::vector<ReebGraph> reeb_nodes() const;
};

// Checks structural consistency: each labeling valid, consecutive quotients
// isomorphic, endpoints isomorphic to the compared graphs.
void validate_zigzag(const ZigzagCertificate& z, const ReebGraph& a, const ReebGraph& b);

// Exact cost: sup of the spread over the iterated pullback.
Rat zigzag_cost(const ZigzagCertificate& z);

// Fiber product of the two quotient maps out of (X1,right) ~ (X2,left).
// Cells of the pullback with both projections; exposed for inspection.
struct PullbackCell {
  // one free parameter per cell (degenerate cells have lo == hi); the
  // projections give the X1 / X2 locations at the parameter ends
  Rat level_lo, level_hi;           // shared target level range
  GPoint x1_lo, x1_hi, x2_lo, x2_hi;
  bool two_dimensional = false;     // flat-times-flat product cell
};

std::vector<PullbackCell> pullback(const ZigzagX& x1, const ZigzagX& x2);

struct UniversalBounds {
  Bracket bracket;
  Bracket interleaving;
};

UniversalBounds universal_bounds(const ReebGraph& a, const ReebGraph& b,
                                 const std::vector<ZigzagCertificate>& certs, const Rat& tol,
                                 SearchBudget& budget);

// Transcribes a birth/relabel/death edit sequence into a zigzag certificate.
// Returns nullopt when the sequence uses K-type moves.
std::optional<ZigzagCertificate> transcribe_sequence(const EditSequence& s);

ZigzagCertificate parse_zz(std::istream& in);
ZigzagCertificate parse_zz_file(const std::string& path);
void serialize_zz(const ZigzagCertificate& z, std::ostream& out);

}  // namespace reeb
