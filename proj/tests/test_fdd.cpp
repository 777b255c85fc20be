#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "reeb/fdd.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/matching.hpp"
#include "reeb/persistence.hpp"

using namespace reeb;

namespace {

const Rat kTol(1, 1000000);
const Rat kDelta(1, 20);

}  // namespace

TEST_CASE("certificate files round trip") {
  MapCertificate c = fixtures::ex2_cert();
  std::ostringstream os;
  serialize_cert(c, os);
  std::istringstream is(os.str());
  MapCertificate back = parse_cert(is);
  std::ostringstream os2;
  serialize_cert(back, os2);
  CHECK(os2.str() == os.str());
}

TEST_CASE("certificate validation catches gaps and jumps") {
  auto [a, b] = fixtures::ex2_pair();
  ReebGraph ca = canonicalize(a), cb = canonicalize(b);
  MapCertificate good = fixtures::ex2_cert();
  CHECK_NOTHROW(validate_certificate(ca, cb, good));
  MapCertificate gap = good;
  gap.forward.erase(gap.forward.begin());
  CHECK_THROWS(validate_certificate(ca, cb, gap));
  MapCertificate jump = good;
  jump.forward[0].img1 = Rat(3);  // endpoint image disagrees with the next piece
  CHECK_THROWS(validate_certificate(ca, cb, jump));
}

TEST_CASE("identity certificate evaluates to zero") {
  ReebGraph g = canonicalize(fixtures::ex1_pair().first);
  MapCertificate id = identity_certificate(g, g);
  auto d = evaluate_distortion(g, g, id, kDelta);
  CHECK(d.lower == Rat(0));
  auto [s1, s2] = evaluate_supnorms(g, g, id);
  CHECK(s1 == Rat(0));
  CHECK(s2 == Rat(0));
  CHECK(fdd_upper(g, g, id, kDelta) <= kDelta);
}

TEST_CASE("translation certificate measures the shift in the sup norms") {
  ReebGraph e;
  e.values = {{0, Rat(0)}, {1, Rat(1)}};
  e.edges = {{0, 1}};
  ReebGraph shifted;
  Rat delta(1, 5);
  shifted.values = {{0, delta}, {1, Rat(1) + delta}};
  shifted.edges = {{0, 1}};
  MapCertificate c;
  CertPiece fwd;
  fwd.src_u = 0;
  fwd.src_w = 1;
  fwd.t0 = Rat(0);
  fwd.t1 = Rat(1);
  fwd.dst_u = 0;
  fwd.dst_w = 1;
  fwd.img0 = delta;
  fwd.img1 = Rat(1) + delta;
  CertPiece bwd;
  bwd.src_u = 0;
  bwd.src_w = 1;
  bwd.t0 = delta;
  bwd.t1 = Rat(1) + delta;
  bwd.dst_u = 0;
  bwd.dst_w = 1;
  bwd.img0 = Rat(0);
  bwd.img1 = Rat(1);
  c.forward = {fwd};
  c.backward = {bwd};
  auto [s1, s2] = evaluate_supnorms(e, shifted, c);
  CHECK(s1 == delta);
  CHECK(s2 == delta);
  auto d = evaluate_distortion(e, shifted, c, kDelta);
  CHECK(d.lower == Rat(0));
}

TEST_CASE("contracting a leaf to its base point costs the leaf height") {
  // source: stem with an up-leaf; target: bare stem. The backward piece
  // sends the whole leaf onto the base point, so the sup norm is at least
  // the leaf height above its root.
  ReebGraph leafy;
  leafy.values = {{0, Rat(0)}, {1, Rat(2)}, {2, Rat(3)}, {3, Rat(5)}};
  leafy.edges = {{0, 1}, {1, 2}, {1, 3}};
  ReebGraph bare;
  bare.values = {{0, Rat(0)}, {3, Rat(5)}};
  bare.edges = {{0, 3}};
  MapCertificate c;
  auto piece = [](int su, int sw, Rat t0, Rat t1, int du, int dw, Rat i0, Rat i1) {
    CertPiece p;
    p.src_u = su;
    p.src_w = sw;
    p.t0 = t0;
    p.t1 = t1;
    p.dst_u = du;
    p.dst_w = dw;
    p.img0 = i0;
    p.img1 = i1;
    return p;
  };
  c.forward = {piece(0, 1, Rat(0), Rat(2), 0, 3, Rat(0), Rat(2)),
               piece(1, 3, Rat(2), Rat(5), 0, 3, Rat(2), Rat(5)),
               piece(1, 2, Rat(2), Rat(3), 0, 3, Rat(2), Rat(2))};  // leaf to base
  c.backward = {piece(0, 3, Rat(0), Rat(5), 0, 3, Rat(0), Rat(5))};
  auto [s1, s2] = evaluate_supnorms(leafy, bare, c);
  CHECK(s1 >= Rat(3) - Rat(2));
}

TEST_CASE("worked-example certificates hit the published values") {
  {
    auto [a, b] = fixtures::ex1_pair();
    ReebGraph ca = canonicalize(a), cb = canonicalize(b);
    auto d = evaluate_distortion(ca, cb, fixtures::ex1_cert(), kDelta);
    CHECK(d.lower == Rat(1, 2));
    CHECK(d.upper == Rat(1, 2) + kDelta);
    auto [s1, s2] = evaluate_supnorms(ca, cb, fixtures::ex1_cert());
    CHECK(s1 == Rat(0));
    CHECK(s2 == Rat(0));
  }
  {
    auto [a, b] = fixtures::ex3_pair();
    ReebGraph ca = canonicalize(a), cb = canonicalize(b);
    auto d = evaluate_distortion(ca, cb, fixtures::ex3_cert(), kDelta);
    CHECK(d.lower == Rat(1));
  }
  {
    auto [a, b] = fixtures::ex4_pair();
    ReebGraph ca = canonicalize(a), cb = canonicalize(b);
    auto [s1, s2] = evaluate_supnorms(ca, cb, fixtures::ex4_cert());
    CHECK(s2 == Rat(1));
  }
}

TEST_CASE("bracket consistency on the worked examples") {
  SearchBudget bud;
  auto [a, b] = fixtures::ex2_pair();
  auto r = fdd_bounds(canonicalize(a), canonicalize(b), {fixtures::ex2_cert()}, kDelta, kTol,
                      bud);
  CHECK(!r.bracket.infinite);
  CHECK(r.bracket.lo <= r.bracket.hi);
  CHECK(r.bracket.hi == Rat(2, 5));
  CHECK(r.interleaving.lo <= r.bracket.hi);  // d_I <= d_FD

  // identical graphs collapse to zero
  SearchBudget bud2;
  auto same = fdd_bounds(canonicalize(a), canonicalize(a), {}, kDelta, kTol, bud2);
  CHECK(same.bracket.lo == Rat(0));
  CHECK(same.bracket.hi == Rat(0));
}

TEST_CASE("classwise bottleneck bounds respect the certificate upper") {
  auto [a, b] = fixtures::ex4_pair();
  ReebGraph ca = canonicalize(a), cb = canonicalize(b);
  Rat upper = fdd_upper(ca, cb, fixtures::ex4_cert(), Rat(1, 10));
  Diagram da = extended_diagram(ca), db = extended_diagram(cb);
  CHECK(bottleneck_class(da, db, PClass::Ord0) <= upper);
  CHECK(bottleneck_class(da, db, PClass::Rel1) <= upper);
  CHECK(bottleneck_class(da, db, PClass::Ext0) <= upper);
  CHECK(bottleneck_class(da, db, PClass::Ext1) <= 3 * upper);
  // both trees: the graded bottleneck is bounded by the distortion upper
  CHECK(bottleneck_graded(da, db) <= upper);
}
