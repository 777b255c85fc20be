#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/interleave.hpp"
#include "reeb/iso.hpp"
#include "reeb/paths.hpp"
#include "reeb/sweep.hpp"

using namespace reeb;

namespace {

const Rat kTol(1, 1000000);

Bracket dist(const ReebGraph& a, const ReebGraph& b, const Rat& m = Rat(0)) {
  SearchBudget bud;
  return truncated_interleaving_distance(canonicalize(a), canonicalize(b), m, kTol, bud);
}

}  // namespace

TEST_CASE("map enumeration counts") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(1)}};
  e.edges = {{0, 1}};
  std::vector<Rat> grid = {Rat(0), Rat(1)};
  Leveled le(e, grid);
  CHECK(enumerate_maps(le, le, 1000).size() == 1);

  ReebGraph two;
  two.values = {{0, Rat(0)}, {1, Rat(1)}};
  two.edges = {{0, 1}, {0, 1}};
  Leveled lt(two, grid);
  CHECK(enumerate_maps(le, lt, 1000).size() == 2);

  // maps between the first example pair exist without any smoothing
  auto [a, b] = fixtures::ex1_pair();
  ReebGraph ca = canonicalize(a), cb = canonicalize(b);
  std::set<Rat> g;
  for (const auto& [id, v] : ca.values) g.insert(v);
  for (const auto& [id, v] : cb.values) g.insert(v);
  Leveled la(ca, {g.begin(), g.end()}), lb(cb, {g.begin(), g.end()});
  CHECK(!enumerate_maps(la, lb, 100000).empty());
}

TEST_CASE("interleaving decision at and below the optimum") {
  auto [a, b] = fixtures::ex1_pair();
  ReebGraph ca = canonicalize(a), cb = canonicalize(b);
  SearchBudget bud;
  CHECK(check_interleaving(ca, cb, Rat(1, 2), Rat(0), bud).outcome == DecisionOutcome::Yes);
  SearchBudget bud2;
  CHECK(check_interleaving(ca, cb, Rat(1, 2) - kTol, Rat(0), bud2).outcome ==
        DecisionOutcome::No);
  SearchBudget bud3;
  auto self = check_interleaving(ca, ca, Rat(0), Rat(0), bud3);
  CHECK(self.outcome == DecisionOutcome::Yes);
}

TEST_CASE("interleaving distances on the worked examples") {
  auto [a2, b2] = fixtures::ex2_pair();
  Bracket d2 = dist(a2, b2);
  CHECK(d2.exact);
  CHECK(d2.hi == Rat(2, 5));

  auto [a1, b1] = fixtures::ex1_pair();
  Bracket d1 = dist(a1, b1);
  CHECK(d1.exact);
  CHECK(d1.hi == Rat(1, 2));

  CHECK(dist(a1, a1).hi == Rat(0));
}

TEST_CASE("zero distance characterizes isomorphism on fixtures") {
  auto [a, b] = fixtures::ex1_pair();
  CHECK(dist(a, a).hi == Rat(0));
  Bracket d = dist(a, b);
  CHECK(d.lo > Rat(0));
  CHECK(!is_isomorphic(canonicalize(a), canonicalize(b)));
}

TEST_CASE("component mismatch gives infinity") {
  ReebGraph one;
  one.values = {{0, Rat(0)}, {1, Rat(1)}};
  one.edges = {{0, 1}};
  ReebGraph two = one;
  two.values[2] = Rat(2);
  two.values[3] = Rat(3);
  two.edges.push_back({2, 3});
  CHECK(dist(one, two).infinite);
}

TEST_CASE("truncated distance reduces to plain at m = 0 and scales with m") {
  auto [a, b] = fixtures::ex4_pair();
  Bracket plain = dist(a, b);
  Bracket m0 = dist(a, b, Rat(0));
  CHECK(plain.hi == m0.hi);
  Bracket m14 = dist(a, b, Rat(1, 4));
  Bracket m12 = dist(a, b, Rat(1, 2));
  CHECK(m14.hi == Rat(4, 3));
  CHECK(m12.hi == Rat(2));
  // monotone chain within bracket resolution
  CHECK(m0.lo <= m14.hi);
  CHECK(m14.lo <= m12.hi);
  // strong equivalence: d^{m'} <= (1-m)/(1-m') d^m
  CHECK(m14.lo <= Rat(4, 3) * m0.hi + kTol);
  CHECK(m12.lo <= Rat(3, 2) * m14.hi + kTol);
  // identical graphs at any m
  CHECK(dist(a, a, Rat(1, 2)).hi == Rat(0));
}

TEST_CASE("stability and smoothing contraction spot checks") {
  std::mt19937 rng(53);
  ScalarField base = fixtures::stability_base();
  for (int t = 0; t < 5; ++t) {
    ScalarField g = testutil::perturb(base, rng, Rat(1, 10));
    if (!g.generic()) continue;
    ReebGraph ra = build_reeb(base), rb = build_reeb(g);
    Rat eps = linf_distance(base, g);
    SearchBudget bud;
    auto d = check_interleaving(canonicalize(ra), canonicalize(rb), eps, Rat(0), bud);
    CHECK(d.outcome == DecisionOutcome::Yes);
  }
  auto [a, b] = fixtures::ex2_pair();
  Bracket before = dist(a, b);
  Bracket after = dist(smooth(canonicalize(a), Rat(1, 5)).graph,
                       smooth(canonicalize(b), Rat(1, 5)).graph);
  CHECK(after.hi <= before.hi + kTol);
}

TEST_CASE("functorial image of maps under smoothing") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(1)}};
  e.edges = {{0, 1}};
  ReebGraph two;
  two.values = {{0, Rat(0)}, {1, Rat(1)}};
  two.edges = {{0, 1}, {0, 1}};
  std::vector<Rat> grid = {Rat(0), Rat(1)};
  Leveled le(e, grid), lt(two, grid);
  // identity maps to identity
  auto ids = enumerate_maps(le, le, 10);
  auto img = smoothing_image(le, le, ids[0], Rat(1, 4));
  CHECK(img.map == identity_map(img.src));
  // composition is preserved: S[g.f] = S[g].S[f]
  auto fs = enumerate_maps(le, lt, 10);
  auto gs = enumerate_maps(lt, le, 10);
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto sf = smoothing_image(le, lt, f, Rat(1, 4));
      auto sg = smoothing_image(lt, le, g, Rat(1, 4));
      auto sgf = smoothing_image(le, le, compose(le, f, lt, g), Rat(1, 4));
      CHECK(sgf.map == compose(sf.src, sf.map, sf.dst, sg.map));
    }
}
