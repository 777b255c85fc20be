#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/field.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/graph.hpp"
#include "reeb/iso.hpp"
#include "reeb/leveled.hpp"
#include "reeb/paths.hpp"
#include "reeb/sweep.hpp"

using namespace reeb;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_to_string(*parse_rat("0.25")) == "1/4");
  CHECK(rat_to_string(*parse_rat("-1.5")) == "-3/2");
  CHECK(rat_to_string(*parse_rat("7/2")) == "7/2");
  CHECK(rat_to_string(*parse_rat("12")) == "12");
  CHECK(!parse_rat("abc"));
  CHECK(!parse_rat("1/0"));
  CHECK(!parse_rat(""));
}

TEST_CASE("field round trip is byte exact") {
  std::string text =
      "field 1\n"
      "v 1 0\n"
      "v 2 1\n"
      "v 3 1/2\n"
      "e 1 2\n"
      "e 1 3\n"
      "e 2 3\n"
      "t 1 2 3\n";
  std::istringstream in(text);
  ScalarField f = parse_field(in);
  std::ostringstream out;
  serialize_field(f, out);
  CHECK(out.str() == text);
}

TEST_CASE("field validation rejects broken complexes") {
  std::string missing = "field 1\nv 1 0\ne 1 2\n";
  std::istringstream in(missing);
  CHECK_THROWS(parse_field(in));
  std::string face = "field 1\nv 1 0\nv 2 1\nv 3 2\ne 1 2\ne 1 3\nt 1 2 3\n";
  std::istringstream in2(face);
  CHECK_THROWS(parse_field(in2));  // edge 2-3 missing
}

TEST_CASE("reeb round trip is byte exact") {
  std::string text =
      "reeb 1\n"
      "v 1 1\n"
      "v 2 2\n"
      "v 3 3\n"
      "e 1 2 1\n"
      "e 2 3 2\n";
  std::istringstream in(text);
  ReebGraph g = parse_reeb(in);
  std::ostringstream out;
  serialize_reeb(g, out);
  CHECK(out.str() == text);
}

TEST_CASE("canonicalize removes regular vertices and is idempotent") {
  ReebGraph g;
  g.values = {{0, Rat(0)}, {1, Rat(1)}, {2, Rat(2)}};
  g.edges = {{0, 1}, {1, 2}};
  ReebGraph c = canonicalize(g);
  CHECK(c.vertex_count() == 2);
  CHECK(c.edge_count() == 1);
  ReebGraph c2 = canonicalize(c);
  CHECK(is_isomorphic(c, c2));
  CHECK(c.values == c2.values);
  CHECK(c.edges == c2.edges);

  // path subdivided at 5 points collapses to a single edge
  ReebGraph p;
  for (int i = 0; i <= 6; ++i) p.values[i] = Rat(i);
  for (int i = 0; i < 6; ++i) p.edges.push_back({i, i + 1});
  CHECK(canonicalize(p).edge_count() == 1);
}

TEST_CASE("build_reeb of a single triangle is a single edge") {
  ScalarField f;
  f.vertex_ids = {1, 2, 3};
  f.values = {{1, Rat(0)}, {2, Rat(1)}, {3, Rat(2)}};
  f.edges = {{1, 2}, {1, 3}, {2, 3}};
  f.triangles = {{1, 2, 3}};
  ReebGraph g = build_reeb(f);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.min_value() == 0);
  CHECK(g.max_value() == 2);
}

TEST_CASE("build_reeb of a torus mesh with heights is the loop graph") {
  // 9-vertex (3x3) standard torus triangulation
  ScalarField f;
  auto id = [](int r, int c) { return 3 * ((r + 3) % 3) + ((c + 3) % 3) + 1; };
  for (int v = 1; v <= 9; ++v) f.vertex_ids.push_back(v);
  // generic-ish heights: one clear min, one clear max, saddles between
  int heights[9] = {0, 3, 4, 5, 8, 7, 2, 6, 1};
  for (int v = 0; v < 9; ++v) f.values[v + 1] = Rat(heights[v]);
  std::set<std::array<int, 2>> es;
  auto add_edge = [&](int a, int b) {
    es.insert({std::min(a, b), std::max(a, b)});
  };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int a = id(r, c), b = id(r, c + 1), d = id(r + 1, c), e = id(r + 1, c + 1);
      add_edge(a, b);
      add_edge(a, d);
      add_edge(a, e);
      f.triangles.push_back({a, b, e});
      f.triangles.push_back({a, d, e});
    }
  f.edges.assign(es.begin(), es.end());
  f.validate();
  ReebGraph g = build_reeb(f);
  CHECK(g.component_count() == 1);
  CHECK(g.betti1() == 1);
  // min and max survive with the loop between two saddles
  CHECK(g.min_value() == 0);
  CHECK(g.max_value() == 8);
}

TEST_CASE("build_reeb rejects ties unless asked to break them") {
  ScalarField f;
  f.vertex_ids = {1, 2, 3};
  f.values = {{1, Rat(0)}, {2, Rat(0)}, {3, Rat(1)}};
  f.edges = {{1, 3}, {2, 3}};
  CHECK_THROWS(build_reeb(f));
  ReebGraph g = build_reeb(f, true);
  CHECK(g.component_count() == 1);
}

TEST_CASE("genus-2 complex reproduces ten critical vertices and two cycles") {
  ReebGraph fig4 = fixtures::fig4();
  // run the graph itself through the field pipeline as a 1-complex
  ScalarField f;
  for (const auto& [id, v] : fig4.values) {
    f.vertex_ids.push_back(id);
    f.values[id] = v;
  }
  for (const auto& e : fig4.edges) f.edges.push_back({e[0], e[1]});
  ReebGraph g = build_reeb(f);
  CHECK(g.vertex_count() == 10);
  CHECK(g.betti1() == 2);
  CHECK(is_isomorphic(g, canonicalize(fig4)));
}

TEST_CASE("build_reeb is invariant under subdivision of the input complex") {
  ScalarField f;
  f.vertex_ids = {1, 2, 3};
  f.values = {{1, Rat(0)}, {2, Rat(1)}, {3, Rat(2)}};
  f.edges = {{1, 2}, {1, 3}, {2, 3}};
  f.triangles = {{1, 2, 3}};
  ScalarField sub = f;  // subdivide edge 1-3 at its midpoint (value 1 is taken; use 4/3)
  sub.vertex_ids.push_back(4);
  sub.values[4] = Rat(4, 3);
  sub.edges = {{1, 2}, {1, 4}, {4, 3}, {2, 3}, {2, 4}};
  sub.triangles = {{1, 2, 4}, {2, 3, 4}};
  sub.validate();
  CHECK(is_isomorphic(build_reeb(f), build_reeb(sub)));
}

TEST_CASE("first Betti number never exceeds the input complex") {
  std::mt19937 rng(7);
  for (int t = 0; t < 30; ++t) {
    ReebGraph g = testutil::random_generic_graph(rng, 8);
    ScalarField f;
    for (const auto& [id, v] : g.values) {
      f.vertex_ids.push_back(id);
      f.values[id] = v;
    }
    for (const auto& e : g.edges) f.edges.push_back({e[0], e[1]});
    int input_betti = g.edge_count() - g.vertex_count() + g.component_count();
    CHECK(build_reeb(f).betti1() <= input_betti);
  }
}

TEST_CASE("isomorphism examples") {
  auto [a, b] = fixtures::ex1_pair();
  ReebGraph ca = canonicalize(a), cb = canonicalize(b);
  CHECK(is_isomorphic(ca, ca));
  CHECK(!is_isomorphic(ca, cb));
  CHECK(is_isomorphic(ca, cb, false));  // graph-isomorphic with labels erased
  auto w = isomorphism_witness(ca, ca);
  REQUIRE(w.has_value());
  for (auto& [x, y] : *w) CHECK(ca.value(x) == ca.value(y));
}

TEST_CASE("isomorphism is an equivalence relation on random graphs") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    ReebGraph a = testutil::random_generic_graph(rng, 7);
    ReebGraph b = testutil::random_generic_graph(rng, 7);
    ReebGraph c = testutil::random_generic_graph(rng, 7);
    CHECK(is_isomorphic(a, a));
    CHECK(is_isomorphic(a, b) == is_isomorphic(b, a));
    if (is_isomorphic(a, b) && is_isomorphic(b, c)) CHECK(is_isomorphic(a, c));
  }
}

TEST_CASE("path height distance") {
  ReebGraph edge;
  edge.values = {{0, Rat(0)}, {1, Rat(1)}};
  edge.edges = {{0, 1}};
  CHECK(*path_height_distance(edge, GPoint::at_vertex(0, Rat(0)), GPoint::at_vertex(1, Rat(1))) ==
        Rat(1));

  ReebGraph loop;
  loop.values = {{0, Rat(0)}, {1, Rat(1)}};
  loop.edges = {{0, 1}, {0, 1}};
  CHECK(*path_height_distance(loop, GPoint::on_edge(0, Rat(1, 2)), GPoint::on_edge(1, Rat(1, 2))) ==
        Rat(1, 2));

  // disconnected points have no finite distance
  ReebGraph two;
  two.values = {{0, Rat(0)}, {1, Rat(1)}, {2, Rat(2)}, {3, Rat(3)}};
  two.edges = {{0, 1}, {2, 3}};
  CHECK(!path_height_distance(two, GPoint::at_vertex(0, Rat(0)), GPoint::at_vertex(2, Rat(2))));

  // pseudometric properties on sampled points of a fixture
  ReebGraph g = canonicalize(fixtures::ex3_pair().first);
  PathMetric pm(g);
  std::vector<GPoint> pts;
  for (const auto& [id, v] : g.values) pts.push_back(GPoint::at_vertex(id, v));
  for (int e = 0; e < g.edge_count(); ++e) {
    Rat lo = rat_min(g.value(g.edges[e][0]), g.value(g.edges[e][1]));
    Rat hi = rat_max(g.value(g.edges[e][0]), g.value(g.edges[e][1]));
    pts.push_back(GPoint::on_edge(e, (lo + hi) / 2));
  }
  for (const auto& u : pts) CHECK(*pm.distance(u, u) == Rat(0));
  for (const auto& u : pts)
    for (const auto& v : pts) CHECK(*pm.distance(u, v) == *pm.distance(v, u));
  for (const auto& u : pts)
    for (const auto& v : pts)
      for (const auto& w : pts)
        CHECK(*pm.distance(u, w) <= *pm.distance(u, v) + *pm.distance(v, w));
}

TEST_CASE("linf distance") {
  ScalarField f;
  f.vertex_ids = {1, 2};
  f.values = {{1, Rat(0)}, {2, Rat(1)}};
  f.edges = {{1, 2}};
  CHECK(linf_distance(f, f) == Rat(0));
  ScalarField g = f;
  for (auto& [id, v] : g.values) v += Rat(3, 10);
  CHECK(linf_distance(f, g) == Rat(3, 10));
  ScalarField h = f;
  h.values[2] += Rat(3, 10);
  CHECK(linf_distance(f, h) == Rat(3, 10));
  ScalarField other;
  other.vertex_ids = {1};
  other.values = {{1, Rat(0)}};
  CHECK_THROWS(linf_distance(f, other));
}

TEST_CASE("subdivide strand counts") {
  ReebGraph loop;
  loop.values = {{0, Rat(1)}, {1, Rat(2)}, {2, Rat(3)}, {3, Rat(4)}};
  loop.edges = {{0, 1}, {1, 2}, {1, 2}, {2, 3}};
  Leveled l(loop, loop.critical_values());
  CHECK(l.strand_counts() == std::vector<int>{1, 2, 1});

  ReebGraph edge;
  edge.values = {{0, Rat(0)}, {1, Rat(1)}};
  edge.edges = {{0, 1}};
  Leveled l2(edge, {Rat(0), Rat(1, 2), Rat(1)});
  CHECK(l2.strand_counts() == std::vector<int>{1, 1});

  // grid missing a critical value is rejected
  CHECK_THROWS(Leveled(loop, {Rat(1), Rat(4)}));

  // the genus-2 graph on its own grid, read off by hand
  Leveled l3(canonicalize(fixtures::fig4()), fixtures::fig4().critical_values());
  CHECK(l3.strand_counts() == std::vector<int>{1, 2, 3, 2, 3, 2, 3, 2, 1});
}

TEST_CASE("field perturbation preserves order and breaks ties") {
  ScalarField f;
  f.vertex_ids = {1, 2, 3};
  f.values = {{1, Rat(0)}, {2, Rat(0)}, {3, Rat(1)}};
  f.edges = {{1, 3}, {2, 3}};
  ScalarField p = f.perturbed();
  CHECK(p.generic());
  CHECK(p.values[1] < p.values[3]);
  CHECK(p.values[2] < p.values[3]);
}
