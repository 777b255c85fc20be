#include "reeb/fixtures.hpp"

#include <filesystem>
#include <fstream>

#include "reeb/persistence.hpp"
#include "reeb/sweep.hpp"

namespace reeb {
namespace fixtures {

namespace {

ReebGraph make_graph(std::initializer_list<std::pair<int, Rat>> vals,
                     std::initializer_list<std::array<int, 2>> edges) {
  ReebGraph g;
  for (auto& [id, v] : vals) g.values[id] = v;
  for (auto& e : edges) {
    int a = e[0], b = e[1];
    if (g.value(a) > g.value(b) || (g.value(a) == g.value(b) && a > b)) std::swap(a, b);
    g.edges.push_back({a, b});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

CertPiece epiece(int su, int sw, Rat t0, Rat t1, int du, int dw, Rat i0, Rat i1, int sc = 0,
                 int dc = 0) {
  CertPiece p;
  p.src_u = su;
  p.src_w = sw;
  p.t0 = t0;
  p.t1 = t1;
  p.dst_u = du;
  p.dst_w = dw;
  p.img0 = i0;
  p.img1 = i1;
  p.src_copy = sc;
  p.dst_copy = dc;
  return p;
}

}  // namespace

ReebGraph fig4() {
  return make_graph({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 9}, {10, 10}},
                    {{1, 3}, {2, 4}, {3, 4}, {3, 6}, {4, 5}, {5, 6}, {5, 8}, {6, 7}, {7, 9}, {7, 8}, {8, 10}});
}

std::pair<ReebGraph, ReebGraph> fig8_pair() {
  ReebGraph f = make_graph({{1, 1}, {2, 2}, {4, 4}, {5, 5}}, {{1, 2}, {2, 4}, {2, 4}, {4, 5}});
  ReebGraph g = make_graph({{1, 1}, {2, 2}, {3, Rat(19, 5)}, {5, 5}}, {{1, 2}, {2, 3}, {2, 5}});
  return {f, g};
}

std::pair<ReebGraph, ReebGraph> ex1_pair() {
  // two nested cycles [3,6] and [5,7] plus a down-leaf (2,4); the leaf sits
  // on the inner branch in the first graph and on the outer one in the second
  ReebGraph f = make_graph({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}},
                           {{1, 3}, {3, 6}, {3, 4}, {4, 2}, {4, 5}, {5, 6}, {5, 7}, {6, 7}, {7, 8}});
  ReebGraph g = make_graph({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}},
                           {{1, 3}, {3, 4}, {4, 6}, {4, 2}, {3, 5}, {5, 6}, {5, 7}, {6, 7}, {7, 8}});
  return {f, g};
}

std::pair<ReebGraph, ReebGraph> ex2_pair() {
  ReebGraph f = make_graph({{1, 1}, {2, 2}, {3, 3}, {4, 4}}, {{1, 2}, {2, 3}, {2, 3}, {3, 4}});
  ReebGraph g = make_graph({{1, 1}, {2, Rat(9, 5)}, {3, Rat(17, 5)}, {4, 4}},
                           {{1, 2}, {2, 3}, {2, 3}, {3, 4}});
  return {f, g};
}

std::pair<ReebGraph, ReebGraph> ex3_pair() {
  ReebGraph f = make_graph({{1, 1}, {2, 2}, {4, 4}, {5, 5}, {7, 7}, {8, 8}},
                           {{1, 2}, {2, 4}, {2, 4}, {4, 5}, {5, 7}, {5, 7}, {7, 8}});
  // tree: leaves [3,5] and [6,8], stem top at 7
  ReebGraph g = make_graph({{1, 1}, {3, 3}, {5, 5}, {6, 6}, {7, 7}, {8, 8}},
                           {{1, 3}, {3, 5}, {3, 6}, {6, 8}, {6, 7}});
  return {f, g};
}

std::pair<ReebGraph, ReebGraph> ex4_pair() {
  ReebGraph f = make_graph({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}},
                           {{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}, {5, 8}});
  ReebGraph g = make_graph({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 8}, {8, 9}},
                           {{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 8}, {5, 7}});
  return {f, g};
}

MapCertificate ex1_cert() {
  MapCertificate c;
  // forward: collapse the inner branch onto the left branch of the target
  c.forward = {
      epiece(1, 3, 1, 3, 1, 3, 1, 3),
      epiece(3, 4, 3, 4, 3, 4, 3, 4),
      epiece(2, 4, 2, 4, 2, 4, 2, 4),
      epiece(4, 5, 4, 5, 4, 6, 4, 5),
      epiece(5, 6, 5, 6, 4, 6, 5, 6),
      epiece(5, 7, 5, 6, 4, 6, 5, 6),
      epiece(5, 7, 6, 7, 6, 7, 6, 7),
      epiece(6, 7, 6, 7, 6, 7, 6, 7),
      epiece(3, 6, 3, 5, 3, 5, 3, 5),
      epiece(3, 6, 5, 6, 5, 6, 5, 6),
      epiece(7, 8, 7, 8, 7, 8, 7, 8),
  };
  c.backward = {
      epiece(1, 3, 1, 3, 1, 3, 1, 3),
      epiece(3, 4, 3, 4, 3, 4, 3, 4),
      epiece(2, 4, 2, 4, 2, 4, 2, 4),
      epiece(4, 6, 4, 5, 4, 5, 4, 5),
      epiece(4, 6, 5, 6, 5, 6, 5, 6),
      epiece(3, 5, 3, 5, 3, 6, 3, 5),
      epiece(5, 6, 5, 6, 3, 6, 5, 6),
      epiece(5, 7, 5, 6, 3, 6, 5, 6),
      epiece(5, 7, 6, 7, 6, 7, 6, 7),
      epiece(6, 7, 6, 7, 6, 7, 6, 7),
      epiece(7, 8, 7, 8, 7, 8, 7, 8),
  };
  return c;
}

MapCertificate ex2_cert() {
  MapCertificate c;
  Rat a2p(9, 5), a3p(17, 5);
  c.forward = {
      epiece(1, 2, 1, 2, 1, 2, 1, a2p),
      epiece(2, 3, 2, 3, 2, 3, a2p, a3p, 0, 0),
      epiece(2, 3, 2, 3, 2, 3, a2p, a3p, 1, 1),
      epiece(3, 4, 3, 4, 3, 4, a3p, 4),
  };
  c.backward = {
      epiece(1, 2, 1, a2p, 1, 2, 1, 2),
      epiece(2, 3, a2p, a3p, 2, 3, 2, 3, 0, 0),
      epiece(2, 3, a2p, a3p, 2, 3, 2, 3, 1, 1),
      epiece(3, 4, a3p, 4, 3, 4, 3, 4),
  };
  return c;
}

MapCertificate ex3_cert() {
  MapCertificate c;
  c.forward = {
      epiece(1, 2, 1, 2, 1, 3, 1, 2),
      epiece(2, 4, 2, 3, 1, 3, 2, 3, 0, 0),
      epiece(2, 4, 3, 4, 3, 6, 3, 4, 0, 0),
      epiece(2, 4, 2, 3, 1, 3, 2, 3, 1, 0),
      epiece(2, 4, 3, 4, 3, 6, 3, 4, 1, 0),
      epiece(4, 5, 4, 5, 3, 6, 4, 5),
      epiece(5, 7, 5, 6, 3, 6, 5, 6, 0, 0),
      epiece(5, 7, 6, 7, 6, 8, 6, 7, 0, 0),
      epiece(5, 7, 5, 6, 3, 6, 5, 6, 1, 0),
      epiece(5, 7, 6, 7, 6, 8, 6, 7, 1, 0),
      epiece(7, 8, 7, 8, 6, 8, 7, 8),
  };
  c.backward = {
      epiece(1, 3, 1, 2, 1, 2, 1, 2),
      epiece(1, 3, 2, 3, 2, 4, 2, 3, 0, 0),
      epiece(3, 5, 3, 4, 2, 4, 3, 4, 0, 0),
      epiece(3, 5, 4, 5, 4, 5, 4, 5),
      epiece(3, 6, 3, 4, 2, 4, 3, 4, 0, 0),
      epiece(3, 6, 4, 5, 4, 5, 4, 5),
      epiece(3, 6, 5, 6, 5, 7, 5, 6, 0, 0),
      epiece(6, 8, 6, 7, 5, 7, 6, 7, 0, 0),
      epiece(6, 8, 7, 8, 7, 8, 7, 8),
      epiece(6, 7, 6, 7, 5, 7, 6, 7, 0, 0),
  };
  return c;
}

MapCertificate ex4_cert() {
  MapCertificate c;
  c.forward = {
      epiece(1, 3, 1, 3, 1, 3, 1, 3),
      epiece(2, 3, 2, 3, 2, 3, 2, 3),
      epiece(3, 4, 3, 4, 3, 4, 3, 4),
      epiece(4, 5, 4, 5, 4, 8, 4, 5),   // stem climbs into the tall target leaf
      epiece(4, 7, 4, 5, 4, 5, 4, 5),   // 7-tipped leaf starts along the stem
      epiece(4, 7, 5, 7, 5, 7, 5, 7),   // then runs up the 5-rooted target leaf
      epiece(5, 6, 5, 6, 4, 8, 5, 6),
      epiece(5, 8, 5, 8, 4, 8, 5, 8),   // 8-tipped leaf rides the tall leaf
  };
  c.backward = {
      epiece(1, 3, 1, 3, 1, 3, 1, 3),
      epiece(2, 3, 2, 3, 2, 3, 2, 3),
      epiece(3, 4, 3, 4, 3, 4, 3, 4),
      epiece(4, 8, 4, 5, 4, 5, 4, 5),   // tall leaf: lower part along the stem
      epiece(4, 8, 5, 8, 5, 8, 5, 8),   // middle part up the 8-tipped leaf
      epiece(4, 8, 8, 9, 5, 8, 8, 8),   // overshoot held at the old maximum
      epiece(4, 5, 4, 5, 4, 7, 4, 5),
      epiece(5, 6, 5, 6, 4, 7, 5, 6),
      epiece(5, 7, 5, 7, 4, 7, 5, 7),
      epiece(5, 7, 7, 8, 4, 7, 7, 7),   // target leaf tops out at 7; hold the tip
  };
  return c;
}

ZigzagCertificate ex1_zz() {
  ZigzagCertificate z;
  ZigzagX x;
  // the first graph plus a flat pair at 3 on the outer branch; the relabel
  // exchanges it with the leaf on the inner branch
  auto [f, g] = ex1_pair();
  (void)g;
  for (const auto& [id, v] : f.values) {
    x.left[id] = v;
    x.right[id] = v;
  }
  x.left[100] = 3;
  x.left[101] = 3;
  x.right[100] = 4;
  x.right[101] = 2;
  x.right[4] = 3;
  x.right[2] = 3;
  x.edges = {{1, 3}, {3, 4}, {4, 2}, {4, 5}, {5, 6}, {5, 7}, {6, 7}, {7, 8},
             {3, 100}, {100, 6}, {100, 101}};
  z.xs.push_back(x);
  return z;
}

ZigzagCertificate ex2_zz() {
  ZigzagCertificate z;
  ZigzagX x;
  auto [f, g] = ex2_pair();
  for (const auto& [id, v] : f.values) {
    x.left[id] = v;
    x.right[id] = g.value(id);
  }
  x.edges = f.edges;
  z.xs.push_back(x);
  return z;
}

ZigzagCertificate ex3_zz() {
  ZigzagCertificate z;
  // X1: both cycles contracted, with flat rungs so the stems reparameterize
  ZigzagX x1;
  auto setv = [](ZigzagX& x, int id, Rat l, Rat r) {
    x.left[id] = l;
    x.right[id] = r;
  };
  setv(x1, 1, 1, 1);
  setv(x1, 2, 2, 3);
  setv(x1, 4, 4, 3);
  setv(x1, 21, 4, 4);   // w1
  setv(x1, 22, 5, 5);   // w2
  setv(x1, 5, 5, 6);
  setv(x1, 7, 7, 6);
  setv(x1, 23, 7, 7);   // w3
  setv(x1, 8, 8, 8);
  x1.edges = {{1, 2}, {2, 4}, {2, 4}, {4, 21}, {21, 22}, {22, 5}, {5, 7}, {5, 7}, {7, 23}, {23, 8}};
  z.xs.push_back(x1);
  // X2: bare stem growing both leaves, with flat rungs mirrored
  ZigzagX x2;
  setv(x2, 1, 1, 1);
  setv(x2, 30, 3, 3);   // w0
  setv(x2, 31, 4, 3);   // r1
  setv(x2, 32, 4, 5);   // t1
  setv(x2, 33, 6, 6);   // wc
  setv(x2, 34, 7, 6);   // r2
  setv(x2, 35, 7, 8);   // t2
  setv(x2, 36, 8, 7);   // top tip
  x2.edges = {{1, 30}, {30, 31}, {31, 32}, {31, 33}, {33, 34}, {34, 35}, {34, 36}};
  z.xs.push_back(x2);
  return z;
}

ZigzagCertificate ex4_zz() {
  ZigzagCertificate z;
  Rat c(9, 2);
  ZigzagX x1;
  auto setv = [](ZigzagX& x, int id, Rat l, Rat r) {
    x.left[id] = l;
    x.right[id] = r;
  };
  // merge the two leaf roots at 9/2
  setv(x1, 1, 1, 1);
  setv(x1, 2, 2, 2);
  setv(x1, 3, 3, 3);
  setv(x1, 4, 4, c);
  setv(x1, 5, 5, c);
  setv(x1, 6, 6, 6);
  setv(x1, 7, 7, 7);
  setv(x1, 8, 8, 8);
  x1.edges = {{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}, {5, 8}};
  z.xs.push_back(x1);
  // split them the other way and stretch the tips
  ZigzagX x2;
  setv(x2, 1, 1, 1);
  setv(x2, 2, 2, 2);
  setv(x2, 3, 3, 3);
  setv(x2, 40, c, 4);  // root of the leaf that will reach 9
  setv(x2, 41, c, 5);  // root of the leaf that will reach 8
  setv(x2, 6, 6, 6);
  setv(x2, 7, 7, 8);   // old 7-tip stretches to 8
  setv(x2, 8, 8, 9);   // old 8-tip stretches to 9
  x2.edges = {{1, 3}, {2, 3}, {3, 40}, {40, 41}, {41, 6}, {41, 7}, {40, 8}};
  // ids 7/8 end at values 8/9, matching the value-sorted target ids
  z.xs.push_back(x2);
  return z;
}

EditSequence ex1_seq() {
  auto [f, g] = ex1_pair();
  (void)g;
  EditSequence s;
  s.start = f;
  Deformation birth;
  birth.kind = DefKind::Birth;
  birth.edge_u = 3;
  birth.edge_w = 6;
  birth.edge_copy = 0;
  birth.root_id = 100;
  birth.tip_id = 101;
  birth.root_value = 3;
  birth.tip_value = 3;
  s.steps.push_back(birth);
  Deformation rel;
  rel.kind = DefKind::Relabel;
  rel.relabel = {{100, Rat(4)}, {101, Rat(2)}, {4, Rat(3)}, {2, Rat(3)}};
  s.steps.push_back(rel);
  Deformation death;
  death.kind = DefKind::Death;
  death.root_id = 4;
  death.tip_id = 2;
  s.steps.push_back(death);
  return s;
}

EditSequence ex2_seq() {
  auto [f, g] = ex2_pair();
  EditSequence s;
  s.start = f;
  Deformation rel;
  rel.kind = DefKind::Relabel;
  rel.relabel = {{2, g.value(2)}, {3, g.value(3)}};
  s.steps.push_back(rel);
  return s;
}

std::pair<std::pair<ReebGraph, ReebGraph>, ZigzagCertificate> remark_bug() {
  ReebGraph f = make_graph({{0, 0}, {1, 1}}, {{0, 1}});
  ReebGraph g = make_graph({{0, 0}, {1, 4}}, {{0, 1}});
  ZigzagCertificate z;
  auto setv = [](ZigzagX& x, int id, Rat l, Rat r) {
    x.left[id] = l;
    x.right[id] = r;
  };
  ZigzagX x1;  // relabel the tip 1 -> 2
  setv(x1, 0, 0, 0);
  setv(x1, 1, 1, 2);
  x1.edges = {{0, 1}};
  z.xs.push_back(x1);
  ZigzagX x2;  // micro-insert a new tip at 2, grow it to 3
  setv(x2, 0, 0, 0);
  setv(x2, 1, 2, 2);
  setv(x2, 2, 2, 3);
  x2.edges = {{0, 1}, {1, 2}};
  z.xs.push_back(x2);
  ZigzagX x3;  // drop the old vertex, grow the tip to 4
  setv(x3, 0, 0, 0);
  setv(x3, 1, 2, 2);
  setv(x3, 2, 3, 4);
  x3.edges = {{0, 1}, {1, 2}};
  z.xs.push_back(x3);
  return {{f, g}, z};
}

ScalarField stability_base() {
  ScalarField f;
  f.vertex_ids = {1, 2, 3, 4, 5, 6};
  f.values[1] = Rat(0);
  f.values[2] = Rat(1);
  f.values[3] = Rat(3, 10);
  f.values[4] = Rat(6, 5);
  f.values[5] = Rat(1, 2);
  f.values[6] = Rat(7, 5);
  f.edges = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
  return f;
}

int emit(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  int count = 0;
  auto write = [&](const std::string& name, auto&& fn) {
    std::ofstream out(dir + "/" + name);
    fn(out);
    ++count;
  };
  auto wg = [&](const std::string& name, const ReebGraph& g) {
    write(name, [&](std::ostream& o) { serialize_reeb(g, o); });
  };
  auto wd = [&](const std::string& name, const ReebGraph& g) {
    write(name, [&](std::ostream& o) { serialize_dgm(extended_diagram(canonicalize(g)), o); });
  };

  wg("fig4.reeb", fig4());
  wd("fig4.dgm", fig4());
  auto [f8a, f8b] = fig8_pair();
  wg("fig8a.reeb", f8a);
  wg("fig8b.reeb", f8b);
  wd("fig8a.dgm", f8a);
  wd("fig8b.dgm", f8b);

  auto emit_pair = [&](const std::string& stem, std::pair<ReebGraph, ReebGraph> pr,
                       const MapCertificate& cert, const ZigzagCertificate& zz) {
    wg(stem + "a.reeb", pr.first);
    wg(stem + "b.reeb", pr.second);
    wd(stem + "a.dgm", pr.first);
    wd(stem + "b.dgm", pr.second);
    write(stem + ".cert", [&](std::ostream& o) { serialize_cert(cert, o); });
    write(stem + ".zz", [&](std::ostream& o) { serialize_zz(zz, o); });
  };
  emit_pair("ex1", ex1_pair(), ex1_cert(), ex1_zz());
  emit_pair("ex2", ex2_pair(), ex2_cert(), ex2_zz());
  emit_pair("ex3", ex3_pair(), ex3_cert(), ex3_zz());
  emit_pair("ex4", ex4_pair(), ex4_cert(), ex4_zz());
  write("ex1.seq", [&](std::ostream& o) { serialize_seq(ex1_seq(), o); });
  write("ex2.seq", [&](std::ostream& o) { serialize_seq(ex2_seq(), o); });

  auto [rb_pair, rb_zz] = remark_bug();
  wg("remarkbug_a.reeb", rb_pair.first);
  wg("remarkbug_b.reeb", rb_pair.second);
  write("remarkbug.zz", [&](std::ostream& o) { serialize_zz(rb_zz, o); });

  write("examples.manifest", [&](std::ostream& o) {
    o << "pair ex1 ex1a.reeb ex1b.reeb cert ex1.cert zz ex1.zz\n";
    o << "pair ex2 ex2a.reeb ex2b.reeb cert ex2.cert zz ex2.zz\n";
    o << "pair ex3 ex3a.reeb ex3b.reeb cert ex3.cert zz ex3.zz\n";
    o << "pair ex4 ex4a.reeb ex4b.reeb cert ex4.cert zz ex4.zz m 1/4 m 1/2\n";
    o << "pair fig8 fig8a.reeb fig8b.reeb\n";
  });
  return count;
}

}  // namespace fixtures
}  // namespace reeb
