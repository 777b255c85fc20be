#pragma once

#include <iosfwd>
#include <memory>
#include <optional>

#include "reeb/leveled.hpp"
#include "reeb/smoothing.hpp"

namespace reeb {

struct SearchBudget {
  long map_limit = 200000;     // candidate maps per side
  long pair_limit = 4000000;   // (phi, psi) pentagon checks
  bool exhausted = false;      // set when a limit was hit
};

long default_budget_from_env();

struct InterleavingCertificate {
  Rat eps;
  Rat m;  // truncation slope; 0 for plain interleaving
  LeveledMap phi, psi;
  std::vector<Rat> grid;
};

enum class DecisionOutcome { Yes, No, Unknown };

struct Decision {
  DecisionOutcome outcome;
  std::optional<InterleavingCertificate> cert;
};

// Decides eps-interleaving (truncated when m > 0) by exhaustive enumeration
// of leveled maps with both pentagon identities checked exactly.
Decision check_interleaving(const ReebGraph& a, const ReebGraph& b, const Rat& eps,
                            const Rat& m, SearchBudget& budget);

struct Bracket {
  Rat lo, hi;
  bool infinite = false;  // +infinity (component mismatch)
  bool exact = false;     // optimum pinned to hi within probe tolerance
  bool budget_hit = false;

  static Bracket infinity() {
    Bracket b;
    b.infinite = true;
    return b;
  }
  static Bracket point(const Rat& v) {
    Bracket b;
    b.lo = v;
    b.hi = v;
    b.exact = true;
    return b;
  }
};

std::string bracket_to_string(const Bracket& b);

// Bisection over the candidate set, then probe hi - tol; bracket when the
// optimum cannot be certified to lie in the candidate set.
Bracket interleaving_distance(const ReebGraph& a, const ReebGraph& b, const Rat& tol,
                              SearchBudget& budget,
                              InterleavingCertificate* cert_out = nullptr);

Bracket truncated_interleaving_distance(const ReebGraph& a, const ReebGraph& b, const Rat& m,
                                        const Rat& tol, SearchBudget& budget,
                                        InterleavingCertificate* cert_out = nullptr);

void serialize_ilv(const InterleavingCertificate& c, std::ostream& out);

// Functorial image of a function-preserving leveled map under smoothing:
// S_eps[m] : S_eps(A) -> S_eps(B), returned on a grid refining both inputs.
struct SmoothedMap {
  std::vector<Rat> grid;
  Leveled src, dst;  // leveled smoothings of A and B
  LeveledMap map;
};

SmoothedMap smoothing_image(const Leveled& la, const Leveled& lb, const LeveledMap& m,
                            const Rat& eps);

}  // namespace reeb
