#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/iso.hpp"
#include "reeb/leveled.hpp"
#include "reeb/persistence.hpp"

using namespace reeb;

namespace {

Diagram diagram_of(const ReebGraph& g) { return extended_diagram(canonicalize(g)); }

}  // namespace

TEST_CASE("genus-2 diagram matches the worked example") {
  Diagram d = diagram_of(fixtures::fig4());
  Diagram expected;
  expected.points = {
      {Rat(2), Rat(4), PClass::Ord0},
      {Rat(1), Rat(10), PClass::Ext0},
      {Rat(9), Rat(7), PClass::Rel1},
      {Rat(6), Rat(3), PClass::Ext1},
      {Rat(8), Rat(5), PClass::Ext1},
  };
  expected.component_count = 1;
  CHECK(d == expected);
  CHECK(extended_diagram_oracle(canonicalize(fixtures::fig4())) == expected);
}

TEST_CASE("single edge carries only the global pair") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(1)}};
  e.edges = {{0, 1}};
  Diagram d = diagram_of(e);
  REQUIRE(d.points.size() == 1);
  CHECK(d.points[0].cls == PClass::Ext0);
  CHECK(d.points[0].birth == Rat(0));
  CHECK(d.points[0].death == Rat(1));
}

TEST_CASE("loop graph pairs the saddles below the diagonal") {
  ReebGraph loop;
  loop.values = {{0, Rat(1)}, {1, Rat(2)}, {2, Rat(3)}, {3, Rat(4)}};
  loop.edges = {{0, 1}, {1, 2}, {1, 2}, {2, 3}};
  Diagram d = diagram_of(loop);
  Diagram expected;
  expected.points = {{Rat(1), Rat(4), PClass::Ext0}, {Rat(3), Rat(2), PClass::Ext1}};
  expected.component_count = 1;
  CHECK(d == expected);
  CHECK(extended_diagram_oracle(canonicalize(loop)) == expected);
}

TEST_CASE("oracle agrees with the sweep pairing on random graphs") {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    ReebGraph g = testutil::random_generic_graph(rng, 10);
    Diagram fast = extended_diagram(g);
    Diagram slow = extended_diagram_oracle(g);
    REQUIRE(fast == slow);
    // structural counts
    int ext1 = static_cast<int>(fast.of_class(PClass::Ext1).size());
    int ext0 = static_cast<int>(fast.of_class(PClass::Ext0).size());
    CHECK(ext1 == g.betti1());
    CHECK(ext0 == g.component_count());
    // every critical vertex appears in exactly one pair
    CHECK(2 * fast.points.size() == static_cast<size_t>(g.vertex_count()));
  }
}

TEST_CASE("diagram is invariant under subdivision and isomorphism") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    ReebGraph g = testutil::random_generic_graph(rng, 8);
    Diagram d = extended_diagram(g);
    // subdivide every edge at a midpoint via the leveled encoding round trip
    ReebGraph sub = g;
    int next = g.fresh_id();
    std::vector<std::array<int, 2>> edges;
    for (const auto& e : g.edges) {
      Rat mid = (g.value(e[0]) + g.value(e[1])) / 2;
      bool taken = false;
      for (const auto& [id, v] : sub.values) taken = taken || v == mid;
      if (taken) {
        edges.push_back(e);
        continue;
      }
      sub.values[next] = mid;
      edges.push_back({e[0], next});
      edges.push_back({next, e[1]});
      ++next;
    }
    sub.edges = edges;
    if (sub.generic()) CHECK(extended_diagram(canonicalize(sub)) == d);
  }
}

TEST_CASE("diagram of a disjoint union is the union of diagrams") {
  std::mt19937 rng(9);
  ReebGraph a = testutil::random_generic_graph(rng, 6);
  ReebGraph b = testutil::random_generic_graph(rng, 6);
  // shift b so values stay distinct, then merge with disjoint ids
  ReebGraph u = a;
  int off = a.fresh_id();
  Rat shift = a.max_value() - b.min_value() + Rat(1, 3);
  for (const auto& [id, v] : b.values) u.values[id + off] = v + shift;
  for (const auto& e : b.edges) u.edges.push_back({e[0] + off, e[1] + off});
  Diagram da = extended_diagram(a);
  Diagram db;
  for (auto p : extended_diagram(b).points) {
    p.birth += shift;
    p.death += shift;
    db.points.push_back(p);
  }
  Diagram expected;
  expected.points = da.points;
  expected.points.insert(expected.points.end(), db.points.begin(), db.points.end());
  expected.component_count = a.component_count() + b.component_count();
  CHECK(extended_diagram(canonicalize(u)) == expected);
}

TEST_CASE("blocks from diagram points") {
  Diagram d;
  d.points = {
      {Rat(6), Rat(3), PClass::Ext1},
      {Rat(0), Rat(1), PClass::Ext0},
      {Rat(2), Rat(4), PClass::Ord0},
  };
  auto blocks = diagram_to_blocks(d);
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0] == Block{Rat(0), Rat(1), BlockKind::ClosedClosed});
  CHECK(blocks[1] == Block{Rat(2), Rat(4), BlockKind::ClosedOpen});
  CHECK(blocks[2] == Block{Rat(3), Rat(6), BlockKind::OpenOpen});
  Diagram r;
  r.points = {{Rat(9), Rat(7), PClass::Rel1}};
  CHECK(diagram_to_blocks(r)[0] == Block{Rat(7), Rat(9), BlockKind::OpenClosed});
}

TEST_CASE("dgm files round trip") {
  Diagram d = diagram_of(fixtures::fig4());
  std::ostringstream os;
  serialize_dgm(d, os);
  std::istringstream is(os.str());
  Diagram back = parse_dgm(is);
  CHECK(back == d);
  std::ostringstream os2;
  serialize_dgm(back, os2);
  CHECK(os2.str() == os.str());
}

TEST_CASE("non-generic graphs are rejected") {
  ReebGraph g;
  g.values = {{0, Rat(0)}, {1, Rat(0)}, {2, Rat(1)}};
  g.edges = {{0, 2}, {1, 2}};
  CHECK_THROWS(extended_diagram(g));
}
