#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/matching.hpp"

using namespace reeb;

namespace {

Diagram random_diagram(std::mt19937& rng, int max_points) {
  std::uniform_int_distribution<int> np(0, max_points);
  std::uniform_int_distribution<int> coord(0, 40);
  std::uniform_int_distribution<int> cls(0, 3);
  Diagram d;
  int n = np(rng);
  for (int i = 0; i < n; ++i) {
    PPoint p;
    p.birth = Rat(coord(rng), 4);
    p.death = Rat(coord(rng), 4);
    p.cls = static_cast<PClass>(cls(rng));
    d.points.push_back(p);
  }
  return d;
}

}  // namespace

TEST_CASE("matching cost") {
  Diagram d1, d2;
  d1.points = {{Rat(0), Rat(2), PClass::Ord0}};
  d2.points = {{Rat(0), Rat(1), PClass::Ord0}};
  Matching m;
  m.pairs = {{0, 0}};
  CHECK(matching_cost(d1, d2, m) == Rat(1));
  Matching un;
  un.unmatched1 = {0};
  un.unmatched2 = {0};
  CHECK(matching_cost(d1, d2, un) == Rat(1));
  Diagram e1, e2;
  Matching empty;
  CHECK(matching_cost(e1, e2, empty) == Rat(0));
}

TEST_CASE("bottleneck basics") {
  Diagram d1, d2;
  d1.points = {{Rat(0), Rat(2), PClass::Ord0}};
  d2.points = {{Rat(0), Rat(1), PClass::Ord0}};
  CHECK(bottleneck_ungraded(d1, d1) == Rat(0));
  CHECK(bottleneck_ungraded(d1, d2) == Rat(1));
  CHECK(bottleneck_graded(d1, d2) == Rat(1));
}

TEST_CASE("graded vs ungraded on the two-graph example") {
  auto [a, b] = fixtures::fig8_pair();
  Diagram da = extended_diagram(canonicalize(a));
  Diagram db = extended_diagram(canonicalize(b));
  CHECK(bottleneck_ungraded(da, db) == Rat(1, 5));
  CHECK(bottleneck_graded(da, db) == Rat(1));
}

TEST_CASE("binary search equals brute force on random pairs") {
  std::mt19937 rng(17);
  for (int t = 0; t < 100; ++t) {
    Diagram d1 = random_diagram(rng, 6);
    Diagram d2 = random_diagram(rng, 6);
    CHECK(bottleneck_ungraded(d1, d2) == bottleneck_bruteforce(d1, d2));
  }
}

TEST_CASE("bottleneck pseudometric and shift invariance") {
  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    Diagram a = random_diagram(rng, 5);
    Diagram b = random_diagram(rng, 5);
    Diagram c = random_diagram(rng, 5);
    CHECK(bottleneck_ungraded(a, a) == Rat(0));
    CHECK(bottleneck_ungraded(a, b) == bottleneck_ungraded(b, a));
    CHECK(bottleneck_ungraded(a, c) <=
          bottleneck_ungraded(a, b) + bottleneck_ungraded(b, c));
    CHECK(bottleneck_ungraded(a, b) <= bottleneck_graded(a, b));
    Diagram as = a, bs = b;
    for (auto& p : as.points) {
      p.birth += Rat(7, 3);
      p.death += Rat(7, 3);
    }
    for (auto& p : bs.points) {
      p.birth += Rat(7, 3);
      p.death += Rat(7, 3);
    }
    CHECK(bottleneck_ungraded(as, bs) == bottleneck_ungraded(a, b));
    CHECK(bottleneck_graded(as, bs) == bottleneck_graded(a, b));
  }
}

TEST_CASE("wasserstein") {
  Diagram d1, d2;
  d1.points = {{Rat(0), Rat(2), PClass::Ord0}};
  d2.points = {{Rat(0), Rat(1), PClass::Ord0}};
  CHECK(wasserstein(d1, d1, Rat(1), false).total_q == Rat(0));
  auto w = wasserstein(d1, d2, Rat(1), false);
  CHECK(w.exact);
  CHECK(w.total_q == Rat(1));
  // shifting both diagrams leaves the distance unchanged
  Diagram s1 = d1, s2 = d2;
  for (auto& p : s1.points) {
    p.birth += 3;
    p.death += 3;
  }
  for (auto& p : s2.points) {
    p.birth += 3;
    p.death += 3;
  }
  CHECK(wasserstein(s1, s2, Rat(1), false).total_q == Rat(1));
  CHECK_THROWS(wasserstein(d1, d2, Rat(1, 2), false));
}

TEST_CASE("high-degree wasserstein approaches the bottleneck") {
  std::mt19937 rng(31);
  for (int t = 0; t < 10; ++t) {
    Diagram a = random_diagram(rng, 4);
    Diagram b = random_diagram(rng, 4);
    double wb = rat_to_double(bottleneck_ungraded(a, b));
    if (wb == 0.0) continue;
    double w64 = wasserstein(a, b, Rat(64), false).value;
    CHECK(w64 >= wb - 1e-9);
    CHECK(w64 <= wb * 1.05 + 1e-9);
  }
}
