#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/iso.hpp"
#include "reeb/smoothing.hpp"

using namespace reeb;

namespace {

ReebGraph loop_graph() {
  ReebGraph g;
  g.values = {{0, Rat(1)}, {1, Rat(2)}, {2, Rat(3)}, {3, Rat(4)}};
  g.edges = {{0, 1}, {1, 2}, {1, 2}, {2, 3}};
  return g;
}

ReebGraph up_leaf_graph() {
  // stem 0-2 with an up-leaf rooted at 2 reaching 3, stem on to 5
  ReebGraph g;
  g.values = {{0, Rat(0)}, {1, Rat(2)}, {2, Rat(3)}, {3, Rat(5)}};
  g.edges = {{0, 1}, {1, 2}, {1, 3}};
  return g;
}

}  // namespace

TEST_CASE("smoothing the torus loop") {
  ReebGraph g = loop_graph();
  // below the closing threshold the loop narrows
  ReebGraph s = canonicalize(smooth(g, Rat(1, 4)).graph);
  CHECK(s.betti1() == 1);
  CHECK(s.min_value() == Rat(3, 4));
  CHECK(s.max_value() == Rat(17, 4));
  // 2 eps >= loop height closes it
  ReebGraph c = canonicalize(smooth(g, Rat(1, 2)).graph);
  CHECK(c.betti1() == 0);
  // eps = 0 is the identity
  CHECK(is_isomorphic(canonicalize(smooth(g, Rat(0)).graph), canonicalize(g)));
  CHECK_THROWS(smooth(g, Rat(-1)));
}

TEST_CASE("up-leaf shifts upward under smoothing") {
  ReebGraph s = canonicalize(smooth(up_leaf_graph(), Rat(1, 2)).graph);
  // root 2 -> 5/2, tip 3 -> 7/2; global min -1/2, max 11/2
  std::vector<Rat> crit = s.critical_values();
  CHECK(std::find(crit.begin(), crit.end(), Rat(5, 2)) != crit.end());
  CHECK(std::find(crit.begin(), crit.end(), Rat(7, 2)) != crit.end());
  CHECK(s.min_value() == Rat(-1, 2));
  CHECK(s.max_value() == Rat(11, 2));
}

TEST_CASE("smoothing semigroup, extrema shift, loop closure on random graphs") {
  std::mt19937 rng(41);
  for (int t = 0; t < 12; ++t) {
    ReebGraph g = testutil::random_generic_graph(rng, 6);
    if (g.values.empty()) continue;
    Rat e1(1, 3), e2(1, 5);
    ReebGraph s12 = canonicalize(smooth(canonicalize(smooth(g, e1).graph), e2).graph);
    ReebGraph s3 = canonicalize(smooth(g, e1 + e2).graph);
    CHECK(is_isomorphic(s12, s3));
    CHECK(s3.min_value() == g.min_value() - (e1 + e2));
    CHECK(s3.max_value() == g.max_value() + (e1 + e2));
    CHECK(s3.component_count() == g.component_count());
    CHECK(s3.betti1() <= g.betti1());
  }
}

TEST_CASE("truncation trims by monotone reach") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(1)}};
  e.edges = {{0, 1}};
  ReebGraph t = truncate(e, Rat(1, 4));
  CHECK(t.min_value() == Rat(1, 4));
  CHECK(t.max_value() == Rat(3, 4));
  CHECK(t.edge_count() == 1);
  // tau = 0 is the identity
  CHECK(is_isomorphic(truncate(e, Rat(0)), canonicalize(e)));
  // over-truncation empties the graph
  CHECK(truncate(e, Rat(2, 3)).values.empty());
}

TEST_CASE("truncated smoothing composes truncate after smooth") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(1)}};
  e.edges = {{0, 1}};
  ReebGraph ts = truncated_smooth(e, Rat(1, 5), Rat(1, 5));
  CHECK(ts.min_value() == Rat(0));
  CHECK(ts.max_value() == Rat(1));
  CHECK_THROWS(truncated_smooth(e, Rat(1, 5), Rat(1, 2)));  // tau > 2 eps
  // tau = 0 equals plain smoothing
  ReebGraph g = up_leaf_graph();
  CHECK(is_isomorphic(canonicalize(truncated_smooth(g, Rat(1, 4), Rat(0))),
                      canonicalize(smooth(g, Rat(1, 4)).graph)));
  // eps = tau returns the up-leaf tip to its original height
  ReebGraph t2 = canonicalize(truncated_smooth(g, Rat(1, 4), Rat(1, 4)));
  std::vector<Rat> crit = t2.critical_values();
  CHECK(std::find(crit.begin(), crit.end(), Rat(3)) != crit.end());
}

TEST_CASE("truncation is a subset restriction") {
  std::mt19937 rng(43);
  for (int t = 0; t < 12; ++t) {
    ReebGraph g = testutil::random_generic_graph(rng, 6);
    if (g.values.empty()) continue;
    Rat tau(1, 4);
    ReebGraph tr = truncate(g, tau);
    for (const auto& [id, v] : tr.values) {
      bool original = false;
      for (const auto& [id2, v2] : g.values) {
        if (v == v2) original = true;
        // cut points sit at reach boundaries: original value +- tau
        if (v == v2 + tau || v == v2 - tau) original = true;
      }
      CHECK(original);
    }
  }
}

TEST_CASE("natural maps between truncated smoothings exist") {
  std::mt19937 rng(47);
  for (int t = 0; t < 8; ++t) {
    ReebGraph g = testutil::random_generic_graph(rng, 6);
    if (g.values.empty()) continue;
    CHECK(eta_map_valid(g, Rat(1, 5), Rat(1, 10), Rat(1, 3), Rat(1, 10)));
    CHECK(eta_map_valid(g, Rat(1, 5), Rat(1, 10), Rat(2, 5), Rat(1, 5)));
    CHECK(eta_map_valid(g, Rat(0), Rat(0), Rat(1, 2), Rat(1, 2)));
  }
}

TEST_CASE("smoothing round trips through the quotient correspondences") {
  ReebGraph g = canonicalize(fixtures::ex1_pair().first);
  Smoothing s(g, Rat(1, 3));
  // forward then backward lands on the same class
  for (const auto& [id, v] : g.values) {
    GPoint x = GPoint::at_vertex(id, v);
    GPoint im = s.forward(x, Rat(1, 7));
    auto [back, t] = s.backward(im);
    CHECK(back.value + t == im.value);
    CHECK(gpoint_eq(s.graph(), s.forward(back, t), im));
  }
}
