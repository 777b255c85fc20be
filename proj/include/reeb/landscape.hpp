#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reeb/fdd.hpp"
#include "reeb/zigzag.hpp"

namespace reeb {

// One comparison instance: two graphs plus optional same-complex fields and
// certificates feeding the upper bounds.
struct PairInput {
  std::string name;
  ReebGraph a, b;
  std::optional<ScalarField> fa, fb;  // same complex when both present
  std::vector<MapCertificate> fdd_certs;
  std::vector<ZigzagCertificate> zz_certs;
  std::vector<Rat> truncation_ms;  // m values for the truncated chain
};

enum class CheckStatus { Confirmed, Indeterminate, Violated };

struct CheckResult {
  std::string label;
  CheckStatus status;
  std::string detail;
};

struct DistanceReport {
  std::string name;
  Rat d_b, d_B;
  Bracket d_I, d_FD, delta_E;
  std::vector<std::pair<Rat, Bracket>> d_I_m;
  std::optional<Rat> linf;
  std::optional<Bracket> d_E;
  std::vector<CheckResult> checks;

  int violations() const;
  int indeterminates() const;
};

DistanceReport validate_pair(const PairInput& in, const Rat& tol, SearchBudget& budget);

// The Appendix-style component convention: min over component bijections of
// the max per-pair metric value; +infinity on count mismatch.
Bracket component_convention(const std::function<Bracket(const ReebGraph&, const ReebGraph&)>& metric,
                             const ReebGraph& a, const ReebGraph& b);

struct Manifest {
  std::vector<PairInput> pairs;
};

Manifest parse_manifest_file(const std::string& path);

std::string render_report(const DistanceReport& r);

}  // namespace reeb
