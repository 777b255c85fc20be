#include "reeb/fdd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "reeb/iso.hpp"
#include "reeb/matching.hpp"

namespace reeb {

namespace {

// resolve (u, w, copy) to an edge index; copies count parallel edges
int edge_index(const ReebGraph& g, int u, int w, int copy) {
  int seen = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edges[e];
    if ((ed[0] == u && ed[1] == w) || (ed[0] == w && ed[1] == u)) {
      if (seen == copy) return e;
      ++seen;
    }
  }
  throw std::runtime_error("cert: edge not found");
}

GPoint dst_point(const ReebGraph& g, const CertPiece& p, const Rat& t) {
  Rat v = p.img_at(t);
  int e = edge_index(g, p.dst_u, p.dst_w, p.dst_copy);
  return normalize_gpoint(g, GPoint::on_edge(e, v));
}

GPoint src_point(const ReebGraph& g, const CertPiece& p, const Rat& t) {
  if (p.src_vertex >= 0) return GPoint::at_vertex(p.src_vertex, g.value(p.src_vertex));
  int e = edge_index(g, p.src_u, p.src_w, p.src_copy);
  return normalize_gpoint(g, GPoint::on_edge(e, t));
}

void validate_side(const ReebGraph& src, const ReebGraph& dst,
                   const std::vector<CertPiece>& pieces, const std::set<int>& src_boundary,
                   const std::set<int>& dst_boundary) {
  // structural checks + coverage per source edge
  std::map<std::pair<int, int>, std::vector<std::pair<Rat, Rat>>> cover;
  for (const auto& p : pieces) {
    if (p.src_vertex >= 0) {
      if (!src.has_vertex(p.src_vertex)) throw std::runtime_error("cert: bad source vertex");
      if (p.t0 != p.t1 || p.t0 != src.value(p.src_vertex))
        throw std::runtime_error("cert: vertex piece value mismatch");
    } else {
      if (!src.has_vertex(p.src_u) || !src.has_vertex(p.src_w))
        throw std::runtime_error("cert: bad source edge");
      edge_index(src, p.src_u, p.src_w, p.src_copy);
      Rat lo = rat_min(src.value(p.src_u), src.value(p.src_w));
      Rat hi = rat_max(src.value(p.src_u), src.value(p.src_w));
      if (!(lo <= p.t0 && p.t0 < p.t1 && p.t1 <= hi))
        throw std::runtime_error("cert: piece interval outside edge span");
      int ei = edge_index(src, p.src_u, p.src_w, p.src_copy);
      cover[{ei, 0}].push_back({p.t0, p.t1});
    }
    if (!dst.has_vertex(p.dst_u) || !dst.has_vertex(p.dst_w))
      throw std::runtime_error("cert: bad target edge");
    edge_index(dst, p.dst_u, p.dst_w, p.dst_copy);
    Rat dlo = rat_min(dst.value(p.dst_u), dst.value(p.dst_w));
    Rat dhi = rat_max(dst.value(p.dst_u), dst.value(p.dst_w));
    for (const Rat& iv : {p.img0, p.img1})
      if (!(dlo <= iv && iv <= dhi)) throw std::runtime_error("cert: image value outside target edge");
  }
  // every source edge fully covered
  for (int e = 0; e < src.edge_count(); ++e) {
    const auto& ed = src.edges[e];
    auto it = cover.find({e, 0});
    if (it == cover.end()) throw std::runtime_error("cert: source edge not covered");
    auto ivs = it->second;
    std::sort(ivs.begin(), ivs.end());
    Rat lo = rat_min(src.value(ed[0]), src.value(ed[1]));
    Rat hi = rat_max(src.value(ed[0]), src.value(ed[1]));
    Rat at = lo;
    for (auto& [x, y] : ivs) {
      if (x > at) throw std::runtime_error("cert: coverage gap");
      at = rat_max(at, y);
    }
    if (at < hi) throw std::runtime_error("cert: coverage gap at top");
  }
  // continuity: all pieces covering a source point must agree on its image
  auto image_set = [&](const GPoint& x) {
    std::vector<GPoint> out;
    for (const auto& p : pieces) {
      if (p.src_vertex >= 0) {
        if (x.vertex == p.src_vertex) out.push_back(dst_point(dst, p, p.t0));
        continue;
      }
      int e = edge_index(src, p.src_u, p.src_w, p.src_copy);
      bool on = false;
      if (x.vertex >= 0) {
        on = (p.src_u == x.vertex && (src.value(x.vertex) == p.t0 || src.value(x.vertex) == p.t1)) ||
             (p.src_w == x.vertex && (src.value(x.vertex) == p.t0 || src.value(x.vertex) == p.t1));
      } else {
        on = (x.edge == e && p.t0 <= x.value && x.value <= p.t1);
      }
      if (on) out.push_back(dst_point(dst, p, x.vertex >= 0 ? src.value(x.vertex) : x.value));
    }
    return out;
  };
  std::vector<GPoint> check_points;
  for (const auto& [id, v] : src.values) check_points.push_back(GPoint::at_vertex(id, v));
  for (const auto& p : pieces) {
    if (p.src_vertex >= 0) continue;
    int e = edge_index(src, p.src_u, p.src_w, p.src_copy);
    for (const Rat& t : {p.t0, p.t1})
      check_points.push_back(normalize_gpoint(src, GPoint::on_edge(e, t)));
  }
  for (const auto& x : check_points) {
    auto imgs = image_set(x);
    if (imgs.empty()) throw std::runtime_error("cert: source point with no image");
    for (size_t i = 1; i < imgs.size(); ++i)
      if (!gpoint_eq(dst, imgs[0], imgs[i]))
        throw std::runtime_error("cert: discontinuity at a shared endpoint");
  }
  // boundary preservation when declared
  if (!src_boundary.empty() || !dst_boundary.empty()) {
    for (int v : src_boundary) {
      auto imgs = image_set(GPoint::at_vertex(v, src.value(v)));
      for (const auto& im : imgs) {
        GPoint n = normalize_gpoint(dst, im);
        if (n.vertex < 0 || !dst_boundary.count(n.vertex))
          throw std::runtime_error("cert: boundary vertex not mapped to boundary");
      }
    }
  }
}

struct Sample {
  GPoint fx, gy;   // point on R_f, point on R_g
  double fv, gv;   // double values for the fast pass
};

void collect_samples(const ReebGraph& f, const ReebGraph& g, const std::vector<CertPiece>& pieces,
                     bool forward, const Rat& step, std::vector<Sample>& out) {
  for (const auto& p : pieces) {
    Rat extent = rat_max(p.t1 - p.t0, rat_abs(p.img1 - p.img0));
    long n = 1;
    if (step > 0 && extent > 0) {
      Rat k = extent / step;
      n = (numerator(k) / denominator(k)).convert_to<long>() + 1;
    }
    for (long i = 0; i <= n; ++i) {
      Rat t = p.t0 + (p.t1 - p.t0) * Rat(i, n);
      Sample s;
      if (forward) {
        s.fx = src_point(f, p, t);
        s.gy = dst_point(g, p, t);
      } else {
        s.gy = src_point(g, p, t);
        s.fx = dst_point(f, p, t);
      }
      s.fv = rat_to_double(s.fx.value);
      s.gv = rat_to_double(s.gy.value);
      out.push_back(s);
      if (p.t0 == p.t1) break;
    }
  }
}

// fast approximate d_f via precomputed vertex-pair pareto ranges
struct FastMetric {
  const ReebGraph& g;
  const PathMetric& pm;
  std::map<int, double> val;
  FastMetric(const ReebGraph& g_, const PathMetric& pm_) : g(g_), pm(pm_) {
    for (const auto& [id, v] : g.values) val[id] = rat_to_double(v);
  }
  double dist(const GPoint& a, const GPoint& b) const {
    if (a.vertex >= 0 && b.vertex >= 0 && a.vertex == b.vertex) return 0.0;
    if (a.edge >= 0 && b.edge >= 0 && a.edge == b.edge)
      return std::abs(rat_to_double(a.value) - rat_to_double(b.value));
    auto ends = [&](const GPoint& p) -> std::vector<int> {
      if (p.vertex >= 0) return {p.vertex};
      return {g.edges[p.edge][0], g.edges[p.edge][1]};
    };
    double av = rat_to_double(a.value), bv = rat_to_double(b.value);
    double best = 1e300;
    for (int x : ends(a))
      for (int y : ends(b))
        for (const auto& [lo, hi] : pm.pareto(x, y)) {
          double L = std::min({av, bv, rat_to_double(lo)});
          double H = std::max({av, bv, rat_to_double(hi)});
          best = std::min(best, H - L);
        }
    return best;
  }
};

}  // namespace

void validate_certificate(const ReebGraph& f, const ReebGraph& g, const MapCertificate& c) {
  validate_side(f, g, c.forward, c.boundary_f, c.boundary_g);
  validate_side(g, f, c.backward, c.boundary_g, c.boundary_f);
}

DistortionResult evaluate_distortion(const ReebGraph& f, const ReebGraph& g,
                                     const MapCertificate& c, const Rat& resolution) {
  Rat step = resolution / 2;
  std::vector<Sample> samples;
  collect_samples(f, g, c.forward, true, step, samples);
  collect_samples(f, g, c.backward, false, step, samples);

  PathMetric pmf(f), pmg(g);
  FastMetric fmf(f, pmf), fmg(g, pmg);

  const size_t n = samples.size();
  double best_d = -1.0;
  // pass 1: doubles, keep everything close to the running max
  std::vector<std::pair<size_t, size_t>> all_cand;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      double df = fmf.dist(samples[i].fx, samples[j].fx);
      double dg = fmg.dist(samples[i].gy, samples[j].gy);
      double l = 0.5 * std::abs(df - dg);
      if (l > best_d + 1e-9) {
        best_d = l;
        all_cand.clear();
        all_cand.push_back({i, j});
      } else if (l > best_d - 1e-6) {
        all_cand.push_back({i, j});
      }
    }
  }
  // pass 2: exact re-evaluation of near-max pairs
  Rat best(0);
  for (auto& [i, j] : all_cand) {
    auto df = pmf.distance(samples[i].fx, samples[j].fx);
    auto dg = pmg.distance(samples[i].gy, samples[j].gy);
    if (!df || !dg) continue;  // cross-component pairs do not constrain
    Rat l = rat_abs(*df - *dg) / 2;
    best = rat_max(best, l);
  }
  DistortionResult r;
  r.lower = best;
  r.upper = best + resolution;
  return r;
}

std::pair<Rat, Rat> evaluate_supnorms(const ReebGraph& f, const ReebGraph& g,
                                      const MapCertificate& c) {
  Rat s1(0), s2(0);
  for (const auto& p : c.forward) {
    s1 = rat_max(s1, rat_abs(p.t0 - p.img0));
    s1 = rat_max(s1, rat_abs(p.t1 - p.img1));
  }
  for (const auto& p : c.backward) {
    s2 = rat_max(s2, rat_abs(p.t0 - p.img0));
    s2 = rat_max(s2, rat_abs(p.t1 - p.img1));
  }
  (void)f;
  (void)g;
  return {s1, s2};
}

namespace {

// default sampling resolution: 1/64 of the smaller graph's value range
Rat effective_resolution(const ReebGraph& f, const ReebGraph& g, const Rat& resolution) {
  if (resolution > 0) return resolution;
  if (f.values.empty() || g.values.empty()) return Rat(1, 64);
  Rat rf = f.max_value() - f.min_value();
  Rat rg = g.max_value() - g.min_value();
  Rat r = rat_min(rf, rg);
  if (r == 0) return Rat(1, 64);
  return r / 64;
}

}  // namespace

Rat fdd_upper(const ReebGraph& f, const ReebGraph& g, const MapCertificate& c,
              const Rat& resolution) {
  validate_certificate(f, g, c);
  Rat res = effective_resolution(f, g, resolution);
  auto d = evaluate_distortion(f, g, c, res);
  auto [s1, s2] = evaluate_supnorms(f, g, c);
  return rat_max(d.upper, rat_max(s1, s2));
}

namespace {

// max(|min_f - min_g|, |max_f - max_g|) with the component convention
std::optional<Rat> global_pair_bound(const ReebGraph& a, const ReebGraph& b) {
  if (a.values.empty() || b.values.empty()) return std::nullopt;
  int ca = a.component_count(), cb = b.component_count();
  if (ca != cb) return std::nullopt;
  Diagram da = extended_diagram(a), db = extended_diagram(b);
  auto ea = da.of_class(PClass::Ext0), eb = db.of_class(PClass::Ext0);
  int n = static_cast<int>(ea.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::optional<Rat> best;
  do {
    Rat m(0);
    for (int i = 0; i < n; ++i) {
      m = rat_max(m, rat_abs(ea[i].birth - eb[perm[i]].birth));
      m = rat_max(m, rat_abs(ea[i].death - eb[perm[i]].death));
    }
    if (!best || m < *best) best = m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

FddBounds fdd_bounds(const ReebGraph& a, const ReebGraph& b,
                     const std::vector<MapCertificate>& certs, const Rat& resolution,
                     const Rat& tol, SearchBudget& budget) {
  FddBounds out;
  if (a.component_count() != b.component_count()) {
    out.bracket = Bracket::infinity();
    out.interleaving = Bracket::infinity();
    return out;
  }
  out.interleaving = interleaving_distance(a, b, tol, budget);

  Rat lower(0);
  if (!out.interleaving.infinite) lower = out.interleaving.lo;
  if (auto gp = global_pair_bound(a, b)) lower = rat_max(lower, *gp);
  Diagram da = extended_diagram(a), db = extended_diagram(b);
  lower = rat_max(lower, bottleneck_class(da, db, PClass::Ord0));
  lower = rat_max(lower, bottleneck_class(da, db, PClass::Rel1));
  lower = rat_max(lower, bottleneck_class(da, db, PClass::Ext0));
  lower = rat_max(lower, bottleneck_class(da, db, PClass::Ext1) / 3);

  std::optional<Rat> upper;
  if (!out.interleaving.infinite) upper = out.interleaving.hi * 3;
  for (const auto& c : certs) {
    Rat u = fdd_upper(a, b, c, resolution);
    if (!upper || u < *upper) upper = u;
  }
  Bracket br;
  if (!upper) {
    br.infinite = true;
  } else {
    br.lo = lower;
    br.hi = *upper;
    br.exact = (br.lo == br.hi);
    br.budget_hit = out.interleaving.budget_hit;
  }
  out.bracket = br;
  return out;
}

MapCertificate parse_cert(std::istream& in) {
  MapCertificate c;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "cert") throw std::runtime_error("cert: missing 'cert 1' header");
      int v;
      ls >> v;
      if (v != 1) throw std::runtime_error("cert: unsupported version");
      header = true;
      continue;
    }
    if (tag == "piece") {
      std::string side, kind;
      ls >> side >> kind;
      CertPiece p;
      std::string t0, t1, i0, i1;
      if (kind == "v") {
        int id;
        ls >> id;
        p.src_vertex = id;
        std::string val;
        ls >> val;
        auto r = parse_rat(val);
        if (!r) throw std::runtime_error("cert: bad vertex value");
        p.t0 = p.t1 = *r;
      } else if (kind == "e") {
        ls >> p.src_u >> p.src_w >> t0 >> t1;
        auto r0 = parse_rat(t0), r1 = parse_rat(t1);
        if (!r0 || !r1) throw std::runtime_error("cert: bad interval");
        p.t0 = *r0;
        p.t1 = *r1;
      } else {
        throw std::runtime_error("cert: bad piece kind");
      }
      std::string arrow;
      ls >> arrow;
      if (arrow != "->") throw std::runtime_error("cert: expected ->");
      ls >> p.dst_u >> p.dst_w >> i0 >> i1;
      auto r0 = parse_rat(i0), r1 = parse_rat(i1);
      if (!r0 || !r1) throw std::runtime_error("cert: bad image values");
      p.img0 = *r0;
      p.img1 = *r1;
      ls >> p.src_copy >> p.dst_copy;  // optional trailing copies
      if (side == "f")
        c.forward.push_back(p);
      else if (side == "b")
        c.backward.push_back(p);
      else
        throw std::runtime_error("cert: bad side");
    } else if (tag == "boundary") {
      std::string side;
      int id;
      ls >> side >> id;
      if (side == "f")
        c.boundary_f.insert(id);
      else
        c.boundary_g.insert(id);
    } else {
      throw std::runtime_error("cert: unknown tag " + tag);
    }
  }
  if (!header) throw std::runtime_error("cert: empty input");
  return c;
}

MapCertificate parse_cert_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_cert(in);
}

void serialize_cert(const MapCertificate& c, std::ostream& out) {
  out << "cert 1\n";
  auto dump = [&](const char* side, const std::vector<CertPiece>& ps) {
    for (const auto& p : ps) {
      out << "piece " << side << " ";
      if (p.src_vertex >= 0)
        out << "v " << p.src_vertex << " " << rat_to_string(p.t0);
      else
        out << "e " << p.src_u << " " << p.src_w << " " << rat_to_string(p.t0) << " "
            << rat_to_string(p.t1);
      out << " -> " << p.dst_u << " " << p.dst_w << " " << rat_to_string(p.img0) << " "
          << rat_to_string(p.img1) << " " << p.src_copy << " " << p.dst_copy << "\n";
    }
  };
  dump("f", c.forward);
  dump("b", c.backward);
  for (int v : c.boundary_f) out << "boundary f " << v << "\n";
  for (int v : c.boundary_g) out << "boundary g " << v << "\n";
}

MapCertificate identity_certificate(const ReebGraph& f, const ReebGraph& g) {
  auto w = isomorphism_witness(f, g, true);
  if (!w) throw std::runtime_error("identity certificate requires isomorphic graphs");
  MapCertificate c;
  for (int e = 0; e < f.edge_count(); ++e) {
    const auto& ed = f.edges[e];
    CertPiece p;
    p.src_u = ed[0];
    p.src_w = ed[1];
    p.t0 = rat_min(f.value(ed[0]), f.value(ed[1]));
    p.t1 = rat_max(f.value(ed[0]), f.value(ed[1]));
    p.dst_u = w->at(ed[0]);
    p.dst_w = w->at(ed[1]);
    p.img0 = p.t0;
    p.img1 = p.t1;
    c.forward.push_back(p);
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edges[e];
    CertPiece p;
    p.src_u = ed[0];
    p.src_w = ed[1];
    p.t0 = rat_min(g.value(ed[0]), g.value(ed[1]));
    p.t1 = rat_max(g.value(ed[0]), g.value(ed[1]));
    std::map<int, int> inv;
    for (auto& [x, y] : *w) inv[y] = x;
    p.dst_u = inv.at(ed[0]);
    p.dst_w = inv.at(ed[1]);
    p.img0 = p.t0;
    p.img1 = p.t1;
    c.backward.push_back(p);
  }
  return c;
}

}  // namespace reeb
