#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/landscape.hpp"
#include "reeb/matching.hpp"
#include "reeb/persistence.hpp"
#include "reeb/sweep.hpp"

using namespace reeb;

namespace {

const Rat kTol(1, 1000000);

Bracket metric_dB(const ReebGraph& a, const ReebGraph& b) {
  return Bracket::point(bottleneck_graded(extended_diagram(a), extended_diagram(b)));
}

}  // namespace

TEST_CASE("component convention") {
  auto [a, b] = fixtures::ex2_pair();
  ReebGraph ca = canonicalize(a), cb = canonicalize(b);
  // connected inputs reduce to the plain metric
  Bracket plain = component_convention(metric_dB, ca, cb);
  CHECK(plain.hi == Rat(2, 5));

  // two components each with an identical pairing available
  ReebGraph u1 = ca, u2 = ca;
  int off = 100;
  for (const auto& [id, v] : cb.values) {
    u1.values[id + off] = v;
    u2.values[id + off] = v;
  }
  for (const auto& e : cb.edges) {
    u1.edges.push_back({e[0] + off, e[1] + off});
    u2.edges.push_back({e[0] + off, e[1] + off});
  }
  Bracket matched = component_convention(metric_dB, u1, u2);
  CHECK(matched.hi == Rat(0));

  // the union bottleneck is bounded by the conventioned one
  Rat union_db = bottleneck_graded(extended_diagram(u1), extended_diagram(u2));
  CHECK(union_db <= matched.hi);

  // count mismatch is infinite
  CHECK(component_convention(metric_dB, ca, u1).infinite);
}

TEST_CASE("worked examples validate without violations") {
  PairInput p;
  p.name = "ex2";
  auto [a, b] = fixtures::ex2_pair();
  p.a = a;
  p.b = b;
  p.fdd_certs = {fixtures::ex2_cert()};
  p.zz_certs = {fixtures::ex2_zz()};
  SearchBudget bud;
  DistanceReport r = validate_pair(p, kTol, bud);
  CHECK(r.violations() == 0);
  CHECK(r.d_b == Rat(2, 5));
  CHECK(r.d_B == Rat(2, 5));
  CHECK(r.d_I.hi == Rat(2, 5));
  CHECK(r.delta_E.hi == Rat(2, 5));
}

TEST_CASE("random same-complex pairs satisfy the inequality set") {
  std::mt19937 rng(61);
  ScalarField base = fixtures::stability_base();
  int done = 0;
  for (int t = 0; t < 12 && done < 6; ++t) {
    ScalarField f = testutil::perturb(base, rng, Rat(1, 10));
    ScalarField g = testutil::perturb(base, rng, Rat(1, 10));
    if (!f.generic() || !g.generic()) continue;
    PairInput p;
    p.name = "rand";
    p.a = build_reeb(f);
    p.b = build_reeb(g);
    p.fa = f;
    p.fb = g;
    SearchBudget bud;
    DistanceReport r = validate_pair(p, kTol, bud);
    CHECK(r.violations() == 0);
    ++done;
  }
  CHECK(done > 0);
}

TEST_CASE("reports render with one status line per check") {
  PairInput p;
  p.name = "ex2";
  auto [a, b] = fixtures::ex2_pair();
  p.a = a;
  p.b = b;
  SearchBudget bud;
  DistanceReport r = validate_pair(p, kTol, bud);
  std::string text = render_report(r);
  CHECK(text.find("d_b") != std::string::npos);
  CHECK(text.find("VIOLATION") == std::string::npos);
}
