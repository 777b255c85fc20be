#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/edit.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/iso.hpp"
#include "reeb/matching.hpp"
#include "reeb/persistence.hpp"
#include "reeb/zigzag.hpp"

using namespace reeb;

namespace {

const Rat kTol(1, 1000000);

ReebGraph k2_config() {
  // two saddles in series: d1,d2 -> u1 -> u2 -> e1,e2
  ReebGraph g;
  g.values = {{0, Rat(0)}, {1, Rat(1)}, {2, Rat(2)}, {3, Rat(3)}, {4, Rat(4)}, {5, Rat(5)}};
  g.edges = {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}};
  return g;
}

}  // namespace

TEST_CASE("birth adds a root and a tip") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(4)}};
  e.edges = {{0, 1}};
  Deformation b;
  b.kind = DefKind::Birth;
  b.edge_u = 0;
  b.edge_w = 1;
  b.root_id = 2;
  b.tip_id = 3;
  b.root_value = Rat(2);
  b.tip_value = Rat(3);
  ReebGraph g = apply(b, e);
  CHECK(g.vertex_count() == e.vertex_count() + 2);
  CHECK(g.edge_count() == e.edge_count() + 2);
  // the inverse death recovers the input up to isomorphism
  Deformation d = inverse(b, e);
  d.root_id = 2;
  d.tip_id = 3;
  CHECK(is_isomorphic(canonicalize(apply(d, g)), canonicalize(e)));
}

TEST_CASE("K2 and K3 are mutually inverse on the saddle pair") {
  ReebGraph g = k2_config();
  Deformation k2;
  k2.kind = DefKind::K2;
  k2.k_u1 = 2;
  k2.k_u2 = 3;
  k2.k_v1 = Rat(3);
  k2.k_v2 = Rat(2);
  ReebGraph h = apply(k2, g);
  // now each saddle carries one up and one down outer edge
  CHECK(h.up_degree(2) >= 1);
  CHECK(h.down_degree(2) >= 1);
  Deformation k3 = inverse(k2, g);
  ReebGraph back = apply(k3, h);
  CHECK(is_isomorphic(canonicalize(back), canonicalize(g)));
}

TEST_CASE("K1 moves a leaf between sibling leaves") {
  // root r at 0 with two long up-leaves; a short leaf hangs off the first
  ReebGraph g;
  g.values = {{0, Rat(-1)}, {1, Rat(0)},  {2, Rat(4)}, {3, Rat(5)},
              {4, Rat(1)},  {5, Rat(2)}};
  //            base        r             t1           t2         p      q
  g.edges = {{0, 1}, {1, 4}, {4, 2}, {4, 5}, {1, 3}};
  // p = 4 bisects leaf (1,2) and carries its own tip q = 5
  Deformation k1;
  k1.kind = DefKind::K1;
  k1.k_u1 = 4;
  k1.edge_u = 1;
  k1.edge_w = 3;  // move onto the sibling leaf (1->3)
  k1.k_v1 = Rat(1);
  k1.k_v2 = Rat(2);
  ReebGraph h = apply(k1, g);
  CHECK(h.degree(4) == 3);
  // p now bisects (1,3): edge (4,3) exists and (4,2) does not
  bool has_43 = false, has_42 = false;
  for (const auto& e : h.edges) {
    if ((e[0] == 4 && e[1] == 3) || (e[0] == 3 && e[1] == 4)) has_43 = true;
    if ((e[0] == 4 && e[1] == 2) || (e[0] == 2 && e[1] == 4)) has_42 = true;
  }
  CHECK(has_43);
  CHECK(!has_42);
  Deformation back = inverse(k1, g);
  CHECK(is_isomorphic(canonicalize(apply(back, h)), canonicalize(g)));
}

TEST_CASE("relabel rejects adjacent inversions and too many swaps") {
  ReebGraph g = k2_config();
  Deformation r;
  r.kind = DefKind::Relabel;
  r.relabel = {{2, Rat(3)}, {3, Rat(2)}};  // adjacent pair swap
  CHECK_THROWS(apply(r, g));
  Deformation ok;
  ok.kind = DefKind::Relabel;
  ok.relabel = {{4, Rat(9, 2)}};
  CHECK_NOTHROW(apply(ok, g));
  Deformation swap2;
  swap2.kind = DefKind::Relabel;
  swap2.relabel = {{0, Rat(1)}, {1, Rat(0)}, {4, Rat(5)}, {5, Rat(4)}};
  CHECK_NOTHROW(apply(swap2, g));  // two disjoint non-adjacent swaps
  Deformation swap3;
  swap3.kind = DefKind::Relabel;
  swap3.relabel = {{0, Rat(1)}, {1, Rat(0)}, {4, Rat(5)}, {5, Rat(4)}, {2, Rat(7)}};
  CHECK_THROWS(apply(swap3, g));  // third inversion: 2 passes 3, 4 and 5
}

TEST_CASE("sequence costs follow the per-step model") {
  EditSequence s1 = fixtures::ex1_seq();
  CHECK(sequence_cost(s1) == Rat(1));
  CHECK(is_isomorphic(canonicalize(sequence_result(s1)),
                      canonicalize(fixtures::ex1_pair().second)));
  EditSequence s2 = fixtures::ex2_seq();
  CHECK(sequence_cost(s2) == Rat(2, 5));
  EditSequence empty;
  empty.start = fixtures::ex1_pair().first;
  CHECK(sequence_cost(empty) == Rat(0));
}

TEST_CASE("sequence cost dominates the bottleneck distance") {
  for (auto s : {fixtures::ex1_seq(), fixtures::ex2_seq()}) {
    ReebGraph a = canonicalize(s.start);
    ReebGraph b = canonicalize(sequence_result(s));
    CHECK(sequence_cost(s) >=
          bottleneck_graded(extended_diagram(a), extended_diagram(b)));
  }
}

TEST_CASE("edit search on the worked examples") {
  auto [a1, b1] = fixtures::ex1_pair();
  auto r1 = edit_search(canonicalize(a1), canonicalize(b1), 100000);
  CHECK(r1.bracket.hi == Rat(1));
  CHECK(r1.grid_optimal);
  auto [a2, b2] = fixtures::ex2_pair();
  auto r2 = edit_search(canonicalize(a2), canonicalize(b2), 100000);
  CHECK(r2.bracket.hi == Rat(2, 5));
  CHECK(r2.bracket.exact);
  auto same = edit_search(canonicalize(a1), canonicalize(a1), 1000);
  CHECK(same.bracket.hi == Rat(0));
  // Betti mismatch is refused with a reason
  auto [a3, b3] = fixtures::ex3_pair();
  CHECK_THROWS(edit_search(canonicalize(a3), canonicalize(b3), 1000));
  std::string why;
  CHECK(!edit_distance_defined(canonicalize(a3), canonicalize(b3), &why));
  CHECK(why.find("Betti") != std::string::npos);
}

TEST_CASE("sequence files round trip") {
  EditSequence s = fixtures::ex1_seq();
  std::ostringstream os;
  serialize_seq(s, os);
  std::istringstream is(os.str());
  EditSequence back = parse_seq(is);
  back.start = s.start;
  CHECK(sequence_cost(back) == sequence_cost(s));
  std::ostringstream os2;
  serialize_seq(back, os2);
  CHECK(os2.str() == os.str());
}

TEST_CASE("zigzag certificates validate and price the examples") {
  auto [a1, b1] = fixtures::ex1_pair();
  CHECK_NOTHROW(validate_zigzag(fixtures::ex1_zz(), a1, b1));
  CHECK(zigzag_cost(fixtures::ex1_zz()) == Rat(1));
  auto [a2, b2] = fixtures::ex2_pair();
  CHECK_NOTHROW(validate_zigzag(fixtures::ex2_zz(), a2, b2));
  CHECK(zigzag_cost(fixtures::ex2_zz()) == Rat(2, 5));
  auto [a3, b3] = fixtures::ex3_pair();
  CHECK_NOTHROW(validate_zigzag(fixtures::ex3_zz(), a3, b3));
  CHECK(zigzag_cost(fixtures::ex3_zz()) == Rat(1));
  auto [a4, b4] = fixtures::ex4_pair();
  CHECK_NOTHROW(validate_zigzag(fixtures::ex4_zz(), a4, b4));
  CHECK(zigzag_cost(fixtures::ex4_zz()) == Rat(1));
  // constant zigzag costs nothing
  ZigzagCertificate id;
  ZigzagX x;
  for (const auto& [vid, v] : a1.values) {
    x.left[vid] = v;
    x.right[vid] = v;
  }
  x.edges = a1.edges;
  id.xs.push_back(x);
  CHECK(zigzag_cost(id) == Rat(0));
}

TEST_CASE("micro-insertion chains cannot undercut the relabel cost") {
  auto [pair, z] = fixtures::remark_bug();
  CHECK_NOTHROW(validate_zigzag(z, pair.first, pair.second));
  CHECK(zigzag_cost(z) >= Rat(3));
}

TEST_CASE("pullbacks of quotient maps") {
  auto [a, b] = fixtures::ex1_pair();
  ZigzagX idx;
  for (const auto& [vid, v] : a.values) {
    idx.left[vid] = v;
    idx.right[vid] = v;
  }
  idx.edges = a.edges;
  // identity with identity: the diagonal, one cell per subdivided piece,
  // no two-dimensional blocks
  auto cells = pullback(idx, idx);
  CHECK(!cells.empty());
  for (const auto& c : cells) CHECK(!c.two_dimensional);

  // two disjoint strands over one edge against the identity edge
  ZigzagX strands;
  strands.left = {{0, Rat(0)}, {1, Rat(1)}, {2, Rat(0)}, {3, Rat(1)}};
  strands.right = strands.left;
  strands.edges = {{0, 1}, {2, 3}};
  ZigzagX edge;
  edge.left = {{0, Rat(0)}, {1, Rat(1)}};
  edge.right = edge.left;
  edge.edges = {{0, 1}};
  CHECK(pullback(edge, strands).size() == 2);
}

TEST_CASE("universal bounds collapse where certificates meet the lower bound") {
  SearchBudget bud;
  auto [a2, b2] = fixtures::ex2_pair();
  auto u2 = universal_bounds(canonicalize(a2), canonicalize(b2), {fixtures::ex2_zz()}, kTol, bud);
  CHECK(u2.bracket.lo == Rat(2, 5));
  CHECK(u2.bracket.hi == Rat(2, 5));
  SearchBudget bud2;
  auto [a1, b1] = fixtures::ex1_pair();
  auto u1 = universal_bounds(canonicalize(a1), canonicalize(b1), {fixtures::ex1_zz()}, kTol, bud2);
  CHECK(u1.bracket.hi == Rat(1));
  CHECK(u1.bracket.lo <= u1.bracket.hi);
  SearchBudget bud3;
  auto same = universal_bounds(canonicalize(a1), canonicalize(a1), {}, kTol, bud3);
  CHECK(same.bracket.lo == Rat(0));
  CHECK(same.bracket.hi == Rat(0));
}

TEST_CASE("transcribed sequences become valid zigzag certificates") {
  auto s = fixtures::ex1_seq();
  auto z = transcribe_sequence(s);
  REQUIRE(z.has_value());
  CHECK_NOTHROW(validate_zigzag(*z, s.start, sequence_result(s)));
  CHECK(zigzag_cost(*z) == Rat(1));
}
