#include "reeb/zigzag.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "reeb/fdd.hpp"
#include "reeb/iso.hpp"
#include "reeb/matching.hpp"
#include "reeb/persistence.hpp"
#include "reeb/sweep.hpp"

namespace reeb {

namespace {

// quotient of one labeling, with cell lookup for sub-pieces
struct SideQuotient {
  std::map<int, Rat> values;
  std::vector<std::array<int, 2>> edges;
  std::unique_ptr<Quotient> quo;

  explicit SideQuotient(const std::map<int, Rat>& vals,
                        const std::vector<std::array<int, 2>>& es)
      : values(vals), edges(es) {
    SweepComplex cx;
    std::map<int, int> idx;
    for (const auto& [id, v] : values) {
      idx[id] = static_cast<int>(cx.values.size());
      cx.values.push_back(v);
    }
    for (const auto& e : edges) cx.edges.push_back({idx.at(e[0]), idx.at(e[1])});
    quo = std::make_unique<Quotient>(cx);
    vidx = idx;
  }
  std::map<int, int> vidx;

  // image of a point of X given by (edge index, param fraction) with the
  // labeling value v; flat edges map through a vertex image
  GPoint image_edge_point(int e, const Rat& v) const {
    const auto& ed = edges[e];
    const Rat &a = values.at(ed[0]), &b = values.at(ed[1]);
    if (a == b) return quo->image_of_vertex(vidx.at(ed[0]));
    if (v == a) return quo->image_of_vertex(vidx.at(ed[0]));
    if (v == b) return quo->image_of_vertex(vidx.at(ed[1]));
    return quo->image_of_edge_point(e, v);
  }
  GPoint image_vertex(int id) const { return quo->image_of_vertex(vidx.at(id)); }
};

// a cell with independent parameters and affine functionals
struct Fn {
  int param = -1;  // -1: constant b
  Rat a, b;
  Rat at(const std::vector<Rat>& u) const { return param < 0 ? b : a * u[param] + b; }
};

struct PCell {
  std::vector<std::array<Rat, 2>> params;  // closed intervals
  std::vector<Fn> fs;                       // f_1 .. f_i
  Fn right;                                 // next-level functional
  GPoint right_cell;                        // image cell in the next quotient
  bool right_cell_is_vertex() const { return right_cell.vertex >= 0; }
};

// sub-pieces of one X under both labelings
struct Piece {
  Rat l0, l1, r0, r1;   // left/right values at the piece's ends
  GPoint left_cell, right_cell;
};

std::vector<Piece> subdivide_x(const ZigzagX& x, const SideQuotient& ql, const SideQuotient& qr) {
  std::vector<Piece> out;
  std::set<Rat> lcrit, rcrit;
  for (const auto& [id, v] : ql.quo->graph().values) lcrit.insert(v);
  for (const auto& [id, v] : qr.quo->graph().values) rcrit.insert(v);
  for (size_t e = 0; e < x.edges.size(); ++e) {
    const auto& ed = x.edges[e];
    Rat l0 = x.left.at(ed[0]), l1 = x.left.at(ed[1]);
    Rat r0 = x.right.at(ed[0]), r1 = x.right.at(ed[1]);
    std::set<Rat> cuts;  // param fractions in (0,1)
    auto add_cuts = [&](const Rat& a, const Rat& b, const std::set<Rat>& crit) {
      if (a == b) return;
      for (const Rat& c : crit) {
        Rat t = (c - a) / (b - a);
        if (Rat(0) < t && t < Rat(1)) cuts.insert(t);
      }
    };
    add_cuts(l0, l1, lcrit);
    add_cuts(r0, r1, rcrit);
    std::vector<Rat> ts = {Rat(0)};
    ts.insert(ts.end(), cuts.begin(), cuts.end());
    ts.push_back(Rat(1));
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
      Piece p;
      p.l0 = l0 + (l1 - l0) * ts[i];
      p.l1 = l0 + (l1 - l0) * ts[i + 1];
      p.r0 = r0 + (r1 - r0) * ts[i];
      p.r1 = r0 + (r1 - r0) * ts[i + 1];
      Rat lmid = (p.l0 + p.l1) / 2, rmid = (p.r0 + p.r1) / 2;
      p.left_cell = ql.image_edge_point(static_cast<int>(e), lmid);
      p.right_cell = qr.image_edge_point(static_cast<int>(e), rmid);
      out.push_back(p);
    }
  }
  // isolated vertices
  for (const auto& [id, v] : x.left) {
    bool incident = false;
    for (const auto& ed : x.edges)
      if (ed[0] == id || ed[1] == id) incident = true;
    if (incident) continue;
    Piece p;
    p.l0 = p.l1 = v;
    p.r0 = p.r1 = x.right.at(id);
    p.left_cell = ql.image_vertex(id);
    p.right_cell = qr.image_vertex(id);
    out.push_back(p);
  }
  return out;
}

// identify cells of quotient A with cells of quotient B through a witness;
// parallel edges are matched in index order
struct CellIdent {
  std::map<int, int> vmap;                   // A vertex -> B vertex
  std::map<int, int> emap;                   // A edge -> B edge

  CellIdent(const ReebGraph& A, const ReebGraph& B) {
    auto w = isomorphism_witness(A, B, true);
    if (!w) throw std::runtime_error("zigzag: consecutive quotients not isomorphic");
    vmap = *w;
    std::map<std::array<int, 2>, std::vector<int>> b_edges;
    for (int e = 0; e < B.edge_count(); ++e) {
      auto ed = B.edges[e];
      std::array<int, 2> key = {std::min(ed[0], ed[1]), std::max(ed[0], ed[1])};
      b_edges[key].push_back(e);
    }
    std::map<std::array<int, 2>, int> used;
    for (int e = 0; e < A.edge_count(); ++e) {
      auto ed = A.edges[e];
      int u = vmap.at(ed[0]), v = vmap.at(ed[1]);
      std::array<int, 2> key = {std::min(u, v), std::max(u, v)};
      emap[e] = b_edges.at(key).at(used[key]++);
    }
  }
  GPoint map_cell(const GPoint& p) const {
    if (p.vertex >= 0) return GPoint::at_vertex(vmap.at(p.vertex), p.value);
    return GPoint::on_edge(emap.at(p.edge), p.value);
  }
};

bool same_cell(const GPoint& a, const GPoint& b) {
  if ((a.vertex >= 0) != (b.vertex >= 0)) return false;
  if (a.vertex >= 0) return a.vertex == b.vertex;
  return a.edge == b.edge;
}

// the image point of a piece-cell at a boundary level, as a graph point
GPoint cell_point_at(const ReebGraph& q, const GPoint& cell, const Rat& lv) {
  if (cell.vertex >= 0) return GPoint::at_vertex(cell.vertex, q.value(cell.vertex));
  return normalize_gpoint(q, GPoint::on_edge(cell.edge, lv));
}

// Do two pieces meet over the target? Positive-length overlaps need the same
// cell; single-point contacts need coinciding image points (a flat piece can
// touch an edge fiber at a shared vertex level).
bool pieces_meet(const ReebGraph& q, const GPoint& ca, const Rat& alo, const Rat& ahi,
                 const GPoint& cb, const Rat& blo, const Rat& bhi, Rat& lo, Rat& hi) {
  lo = rat_max(alo, blo);
  hi = rat_min(ahi, bhi);
  if (lo > hi) return false;
  if (lo < hi) return same_cell(ca, cb);
  GPoint pa = cell_point_at(q, ca, lo), pb = cell_point_at(q, cb, lo);
  return gpoint_eq(q, pa, pb);
}

Rat fn_min(const Fn& f, const std::vector<std::array<Rat, 2>>& params) {
  if (f.param < 0) return f.b;
  Rat v0 = f.a * params[f.param][0] + f.b, v1 = f.a * params[f.param][1] + f.b;
  return rat_min(v0, v1);
}
Rat fn_max(const Fn& f, const std::vector<std::array<Rat, 2>>& params) {
  if (f.param < 0) return f.b;
  Rat v0 = f.a * params[f.param][0] + f.b, v1 = f.a * params[f.param][1] + f.b;
  return rat_max(v0, v1);
}

// sup over the cell of max_i f_i - min_j f_j
Rat cell_spread(const PCell& c) {
  std::vector<Fn> fs = c.fs;
  fs.push_back(c.right);
  Rat best(0);
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j) {
      if (i == j) continue;
      const Fn &F = fs[i], &G = fs[j];
      Rat v;
      if (F.param >= 0 && F.param == G.param) {
        // same parameter: difference is affine, extremes at interval ends
        Rat d0 = (F.a - G.a) * c.params[F.param][0] + (F.b - G.b);
        Rat d1 = (F.a - G.a) * c.params[F.param][1] + (F.b - G.b);
        v = rat_max(d0, d1);
      } else {
        v = fn_max(F, c.params) - fn_min(G, c.params);
      }
      best = rat_max(best, v);
    }
  return best;
}

// substitute: given fn value = a*u+b on param k, and the new shared level
// lam = ra*u + rb (invertible), re-express as affine in lam
Fn reparam(const Fn& f, int k, const Rat& ra, const Rat& rb, int new_param) {
  if (f.param != k) return f;
  Fn g;
  g.param = new_param;
  g.a = f.a / ra;
  g.b = f.b - f.a * rb / ra;
  return g;
}

}  // namespace

std::vector<ReebGraph> ZigzagCertificate::reeb_nodes() const {
  std::vector<ReebGraph> out;
  for (size_t i = 0; i < xs.size(); ++i) {
    out.push_back(reeb_of_labeled_graph(xs[i].left, xs[i].edges));
    if (i + 1 == xs.size()) out.push_back(reeb_of_labeled_graph(xs[i].right, xs[i].edges));
  }
  return out;
}

void validate_zigzag(const ZigzagCertificate& z, const ReebGraph& a, const ReebGraph& b) {
  if (z.xs.empty()) throw std::runtime_error("zigzag: empty certificate");
  for (const auto& x : z.xs) {
    if (x.left.size() != x.right.size()) throw std::runtime_error("zigzag: labeling size mismatch");
    for (const auto& [id, v] : x.left)
      if (!x.right.count(id)) throw std::runtime_error("zigzag: labeling vertex mismatch");
    for (const auto& e : x.edges)
      if (!x.left.count(e[0]) || !x.left.count(e[1]))
        throw std::runtime_error("zigzag: edge references missing vertex");
  }
  auto nodes = z.reeb_nodes();
  if (!is_isomorphic(nodes.front(), canonicalize(a)))
    throw std::runtime_error("zigzag: left endpoint does not match the first graph");
  if (!is_isomorphic(nodes.back(), canonicalize(b)))
    throw std::runtime_error("zigzag: right endpoint does not match the second graph");
  for (size_t i = 0; i + 1 < z.xs.size(); ++i) {
    ReebGraph r1 = reeb_of_labeled_graph(z.xs[i].right, z.xs[i].edges);
    ReebGraph r2 = reeb_of_labeled_graph(z.xs[i + 1].left, z.xs[i + 1].edges);
    if (!is_isomorphic(r1, r2))
      throw std::runtime_error("zigzag: consecutive Reeb nodes do not match");
  }
}

Rat zigzag_cost(const ZigzagCertificate& z) {
  if (z.xs.empty()) return Rat(0);

  // quotients for both labelings of every X
  std::vector<std::unique_ptr<SideQuotient>> ql, qr;
  for (const auto& x : z.xs) {
    ql.push_back(std::make_unique<SideQuotient>(x.left, x.edges));
    qr.push_back(std::make_unique<SideQuotient>(x.right, x.edges));
  }

  // seed cells from X_1
  std::vector<PCell> cells;
  for (const auto& p : subdivide_x(z.xs[0], *ql[0], *qr[0])) {
    PCell c;
    c.params.push_back({Rat(0), Rat(1)});
    Fn fl;  // left functional over the piece parameter
    fl.param = 0;
    fl.a = p.l1 - p.l0;
    fl.b = p.l0;
    if (p.l0 == p.l1) {
      fl.param = -1;
      fl.b = p.l0;
    }
    c.fs.push_back(fl);
    Fn fr;
    fr.param = 0;
    fr.a = p.r1 - p.r0;
    fr.b = p.r0;
    if (p.r0 == p.r1) {
      fr.param = -1;
      fr.b = p.r0;
    }
    c.right = fr;
    c.right_cell = p.right_cell;
    cells.push_back(c);
  }

  for (size_t i = 1; i < z.xs.size(); ++i) {
    CellIdent ident(qr[i - 1]->quo->graph(), ql[i]->quo->graph());
    auto pieces = subdivide_x(z.xs[i], *ql[i], *qr[i]);
    std::vector<PCell> next;
    const ReebGraph& qnext = ql[i]->quo->graph();
    for (const auto& c : cells) {
      GPoint rc = ident.map_cell(c.right_cell);
      Rat rlo = fn_min(c.right, c.params), rhi = fn_max(c.right, c.params);
      for (const auto& p : pieces) {
        Rat plo = rat_min(p.l0, p.l1), phi = rat_max(p.l0, p.l1);
        Rat lo, hi;
        if (!pieces_meet(qnext, rc, rlo, rhi, p.left_cell, plo, phi, lo, hi)) continue;
        PCell n;
        bool cflat = (c.right.param < 0);
        bool pflat = (p.l0 == p.l1);
        if (!cflat && !pflat) {
          // shared level parameter
          int k = c.right.param;
          int np = 0;
          // new params: all of c.params except k (reindexed), plus the level
          std::vector<int> remap(c.params.size(), -1);
          for (size_t q = 0; q < c.params.size(); ++q) {
            if (static_cast<int>(q) == k) continue;
            remap[q] = np++;
            n.params.push_back(c.params[q]);
          }
          int lam = np++;
          n.params.push_back({lo, hi});
          for (const auto& f : c.fs) {
            if (f.param == k)
              n.fs.push_back(reparam(f, k, c.right.a, c.right.b, lam));
            else if (f.param >= 0) {
              Fn g = f;
              g.param = remap[f.param];
              n.fs.push_back(g);
            } else {
              n.fs.push_back(f);
            }
          }
          // middle functional: the shared level itself
          Fn mid;
          mid.param = lam;
          mid.a = Rat(1);
          mid.b = Rat(0);
          n.fs.push_back(mid);
          // piece parameter t solves left(t) = lam
          Rat la = p.l1 - p.l0, lb = p.l0;  // left = la*t + lb
          // right = ra*t + rb -> in lam: ra*(lam-lb)/la + rb
          Rat ra = p.r1 - p.r0, rb = p.r0;
          Fn nr;
          if (ra == 0) {
            nr.param = -1;
            nr.b = rb;
          } else {
            nr.param = lam;
            nr.a = ra / la;
            nr.b = rb - ra * lb / la;
          }
          n.right = nr;
        } else if (!cflat && pflat) {
          // pin the old level parameter at the piece's flat level
          int k = c.right.param;
          Rat u0 = (p.l0 - c.right.b) / c.right.a;
          int np = 0;
          std::vector<int> remap(c.params.size(), -1);
          for (size_t q = 0; q < c.params.size(); ++q) {
            if (static_cast<int>(q) == k) continue;
            remap[q] = np++;
            n.params.push_back(c.params[q]);
          }
          for (const auto& f : c.fs) {
            if (f.param == k) {
              Fn g;
              g.param = -1;
              g.b = f.a * u0 + f.b;
              n.fs.push_back(g);
            } else if (f.param >= 0) {
              Fn g = f;
              g.param = remap[f.param];
              n.fs.push_back(g);
            } else {
              n.fs.push_back(f);
            }
          }
          Fn mid;
          mid.param = -1;
          mid.b = p.l0;
          n.fs.push_back(mid);
          // piece parameter free
          int tp = np++;
          n.params.push_back({Rat(0), Rat(1)});
          Fn nr;
          if (p.r0 == p.r1) {
            nr.param = -1;
            nr.b = p.r0;
          } else {
            nr.param = tp;
            nr.a = p.r1 - p.r0;
            nr.b = p.r0;
          }
          n.right = nr;
        } else if (cflat && !pflat) {
          // old params all free; piece pinned at t0 with left(t0) = c.right.b
          n.params = c.params;
          n.fs = c.fs;
          Fn mid;
          mid.param = -1;
          mid.b = c.right.b;
          n.fs.push_back(mid);
          Rat t0 = (c.right.b - p.l0) / (p.l1 - p.l0);
          Fn nr;
          nr.param = -1;
          nr.b = p.r0 + (p.r1 - p.r0) * t0;
          n.right = nr;
        } else {
          // both flat at the same level
          if (p.l0 != c.right.b) continue;
          n.params = c.params;
          n.fs = c.fs;
          Fn mid;
          mid.param = -1;
          mid.b = p.l0;
          n.fs.push_back(mid);
          int tp = static_cast<int>(n.params.size());
          n.params.push_back({Rat(0), Rat(1)});
          Fn nr;
          if (p.r0 == p.r1) {
            nr.param = -1;
            nr.b = p.r0;
          } else {
            nr.param = tp;
            nr.a = p.r1 - p.r0;
            nr.b = p.r0;
          }
          n.right = nr;
        }
        n.right_cell = p.right_cell;
        next.push_back(std::move(n));
      }
    }
    cells = std::move(next);
  }

  Rat best(0);
  for (const auto& c : cells) best = rat_max(best, cell_spread(c));
  return best;
}

std::vector<PullbackCell> pullback(const ZigzagX& x1, const ZigzagX& x2) {
  SideQuotient qr1(x1.right, x1.edges), ql2(x2.left, x2.edges);
  SideQuotient ql1(x1.left, x1.edges), qr2(x2.right, x2.edges);
  CellIdent ident(qr1.quo->graph(), ql2.quo->graph());
  auto p1 = subdivide_x(x1, ql1, qr1);
  auto p2 = subdivide_x(x2, ql2, qr2);
  std::vector<PullbackCell> out;
  const ReebGraph& q = ql2.quo->graph();
  for (const auto& a : p1) {
    GPoint rc = ident.map_cell(a.right_cell);
    Rat alo = rat_min(a.r0, a.r1), ahi = rat_max(a.r0, a.r1);
    for (const auto& b : p2) {
      Rat blo = rat_min(b.l0, b.l1), bhi = rat_max(b.l0, b.l1);
      Rat lo, hi;
      if (!pieces_meet(q, rc, alo, ahi, b.left_cell, blo, bhi, lo, hi)) continue;
      PullbackCell c;
      c.level_lo = lo;
      c.level_hi = hi;
      c.two_dimensional = (a.r0 == a.r1) && (b.l0 == b.l1);
      out.push_back(c);
    }
  }
  return out;
}

UniversalBounds universal_bounds(const ReebGraph& a, const ReebGraph& b,
                                 const std::vector<ZigzagCertificate>& certs, const Rat& tol,
                                 SearchBudget& budget) {
  UniversalBounds out;
  if (a.component_count() != b.component_count()) {
    out.bracket = Bracket::infinity();
    out.interleaving = Bracket::infinity();
    return out;
  }
  out.interleaving = interleaving_distance(a, b, tol, budget);
  Rat lower(0);
  if (!out.interleaving.infinite) lower = out.interleaving.lo;
  Diagram da = extended_diagram(a), db = extended_diagram(b);
  lower = rat_max(lower, bottleneck_graded(da, db));

  std::optional<Rat> upper;
  if (is_isomorphic(canonicalize(a), canonicalize(b))) upper = Rat(0);
  for (const auto& z : certs) {
    validate_zigzag(z, a, b);
    Rat c = zigzag_cost(z);
    if (!upper || c < *upper) upper = c;
  }
  Bracket br;
  if (!upper) {
    br.infinite = true;
  } else {
    br.lo = lower;
    br.hi = rat_max(lower, *upper);
    br.exact = (br.lo == br.hi);
  }
  out.bracket = br;
  return out;
}

std::optional<ZigzagCertificate> transcribe_sequence(const EditSequence& s) {
  for (const auto& st : s.steps)
    if (st.kind == DefKind::K1 || st.kind == DefKind::K2 || st.kind == DefKind::K3)
      return std::nullopt;
  ZigzagCertificate z;
  ReebGraph g = s.start;
  for (const auto& st : s.steps) {
    ReebGraph h = apply(st, g);
    ZigzagX x;
    switch (st.kind) {
      case DefKind::Birth: {
        // X carries the post-birth structure; the new leaf is flat on the
        // left at the midpoint of its final span so it collapses into g
        x.edges = h.edges;
        for (const auto& [id, v] : h.values) {
          x.right[id] = v;
          x.left[id] = v;
        }
        Rat mid = (st.root_value + st.tip_value) / 2;
        x.left[st.root_id] = mid;
        x.left[st.tip_id] = mid;
        break;
      }
      case DefKind::Death: {
        x.edges = g.edges;
        for (const auto& [id, v] : g.values) {
          x.left[id] = v;
          x.right[id] = v;
        }
        Rat mid = (g.value(st.root_id) + g.value(st.tip_id)) / 2;
        x.right[st.root_id] = mid;
        x.right[st.tip_id] = mid;
        break;
      }
      case DefKind::Relabel: {
        x.edges = g.edges;
        for (const auto& [id, v] : g.values) {
          x.left[id] = v;
          x.right[id] = v;
        }
        for (const auto& [id, v] : st.relabel) x.right[id] = v;
        break;
      }
      default:
        return std::nullopt;
    }
    z.xs.push_back(x);
    g = h;
  }
  return z;
}

ZigzagCertificate parse_zz(std::istream& in) {
  ZigzagCertificate z;
  std::string line;
  bool header = false;
  std::optional<ZigzagX> cur;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "zz") throw std::runtime_error("zz: missing 'zz 1' header");
      int v;
      ls >> v;
      if (v != 1) throw std::runtime_error("zz: unsupported version");
      header = true;
      continue;
    }
    if (tag == "x") {
      if (cur) throw std::runtime_error("zz: nested x block");
      cur = ZigzagX{};
    } else if (tag == "v") {
      if (!cur) throw std::runtime_error("zz: vertex outside x block");
      int id;
      std::string l, r;
      ls >> id >> l >> r;
      auto rl = parse_rat(l), rr = parse_rat(r);
      if (!rl || !rr) throw std::runtime_error("zz: bad labels");
      cur->left[id] = *rl;
      cur->right[id] = *rr;
    } else if (tag == "e") {
      if (!cur) throw std::runtime_error("zz: edge outside x block");
      int u, w;
      ls >> u >> w;
      cur->edges.push_back({u, w});
    } else if (tag == "endx") {
      if (!cur) throw std::runtime_error("zz: stray endx");
      z.xs.push_back(*cur);
      cur.reset();
    } else {
      throw std::runtime_error("zz: unknown tag " + tag);
    }
  }
  if (!header) throw std::runtime_error("zz: empty input");
  if (cur) throw std::runtime_error("zz: unterminated x block");
  return z;
}

ZigzagCertificate parse_zz_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_zz(in);
}

void serialize_zz(const ZigzagCertificate& z, std::ostream& out) {
  out << "zz 1\n";
  for (const auto& x : z.xs) {
    out << "x\n";
    for (const auto& [id, v] : x.left)
      out << "v " << id << " " << rat_to_string(v) << " " << rat_to_string(x.right.at(id)) << "\n";
    for (const auto& e : x.edges) out << "e " << e[0] << " " << e[1] << "\n";
    out << "endx\n";
  }
}

}  // namespace reeb
