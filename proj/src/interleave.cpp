#include "reeb/interleave.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <set>
#include <stdexcept>

namespace reeb {

long default_budget_from_env() {
  const char* s = std::getenv("REEB_BUDGET");
  if (!s) return 200000;
  long v = std::atol(s);
  return v > 0 ? v : 200000;
}

std::string bracket_to_string(const Bracket& b) {
  if (b.infinite) return "inf";
  std::string s = "[" + rat_to_string(b.lo) + ", " + rat_to_string(b.hi) + "]";
  if (b.exact) s += " exact";
  if (b.budget_hit) s += " budget-exhausted";
  return s;
}

namespace {

// All machinery for one (a, b, eps, m) decision instance.
struct Instance {
  const ReebGraph &a, &b;
  Rat eps, m, tau;
  std::shared_ptr<Smoothing> sa, sb, s2a, s2b;
  std::unique_ptr<Truncation> ta, tb, t2a, t2b;  // m > 0 only
  std::vector<Rat> grid;
  Leveled la, lb, lta, ltb, l2a, l2b;
  // sigma images per source cell
  std::vector<std::vector<Cell>> sigma_a_node, sigma_b_node;
  std::vector<std::vector<Cell>> sigma_a_strand, sigma_b_strand;

  Instance(const ReebGraph& a_, const ReebGraph& b_, const Rat& eps_, const Rat& m_)
      : a(a_), b(b_), eps(eps_), m(m_), tau(m_ * eps_) {
    sa = std::make_shared<Smoothing>(a, eps);
    sb = std::make_shared<Smoothing>(b, eps);
    s2a = std::make_shared<Smoothing>(a, 2 * eps);
    s2b = std::make_shared<Smoothing>(b, 2 * eps);
    if (m > 0) {
      ta = std::make_unique<Truncation>(sa->graph(), tau);
      tb = std::make_unique<Truncation>(sb->graph(), tau);
      t2a = std::make_unique<Truncation>(s2a->graph(), 2 * tau);
      t2b = std::make_unique<Truncation>(s2b->graph(), 2 * tau);
    }
    std::set<Rat> gs;
    auto add = [&](const ReebGraph& g) {
      for (const auto& [id, v] : g.values) gs.insert(v);
    };
    add(a);
    add(b);
    add(sa->graph());
    add(sb->graph());
    add(s2a->graph());
    add(s2b->graph());
    if (m > 0) {
      add(ta->graph());
      add(tb->graph());
      add(t2a->graph());
      add(t2b->graph());
    }
    grid.assign(gs.begin(), gs.end());
    la = Leveled(a, grid);
    lb = Leveled(b, grid);
    lta = Leveled(m > 0 ? ta->graph() : sa->graph(), grid);
    ltb = Leveled(m > 0 ? tb->graph() : sb->graph(), grid);
    l2a = Leveled(s2a->graph(), grid);
    l2b = Leveled(s2b->graph(), grid);

    precompute_sigma(la, *s2a, l2a, sigma_a_node, sigma_a_strand);
    precompute_sigma(lb, *s2b, l2b, sigma_b_node, sigma_b_strand);
  }

  void precompute_sigma(const Leveled& src, const Smoothing& s2, const Leveled& l2,
                        std::vector<std::vector<Cell>>& node_img,
                        std::vector<std::vector<Cell>>& strand_img) {
    int L = src.level_count();
    node_img.assign(L, {});
    strand_img.assign(std::max(0, L - 1), {});
    for (int li = 0; li < L; ++li) {
      node_img[li].resize(src.nodes(li).size());
      for (size_t j = 0; j < src.nodes(li).size(); ++j) {
        GPoint x = src.point_of(Cell{true, li, static_cast<int>(j)});
        node_img[li][j] = l2.locate(s2.forward(x, Rat(0)));
      }
    }
    for (int si = 0; si + 1 < L; ++si) {
      strand_img[si].resize(src.strands(si).size());
      for (size_t k = 0; k < src.strands(si).size(); ++k) {
        GPoint x = src.point_of(Cell{false, si, static_cast<int>(k)});
        strand_img[si][k] = l2.locate(s2.forward(x, Rat(0)));
      }
    }
  }

  // Lift a point of the (possibly truncated) smoothing target back to the
  // base graph with its shift.
  std::pair<GPoint, Rat> lift(const GPoint& p, const Smoothing& s, const Truncation* t) const {
    if (!t) return s.backward(p);
    return s.backward(t->to_source(p));
  }

  // Evaluates the composite S_eps[psi] . phi at a source cell of `lsrc`
  // (graph a side when a_side). Returns the cell of the 2eps-smoothing.
  Cell composite_cell(bool a_side, const LeveledMap& phi, const LeveledMap& psi,
                      const Cell& c) const {
    const Leveled& lsrc = a_side ? la : lb;
    const Leveled& lmid = a_side ? ltb : lta;      // truncated target of phi
    const Smoothing& smid = a_side ? *sb : *sa;    // smoothing under phi's target
    const Truncation* tmid = a_side ? tb.get() : ta.get();
    const Leveled& lpsi_src = a_side ? lb : la;
    const Leveled& lpsi_dst = a_side ? lta : ltb;
    const Smoothing& spsi = a_side ? *sa : *sb;    // smoothing under psi's target
    const Truncation* tpsi = a_side ? ta.get() : tb.get();
    const Smoothing& s2 = a_side ? *s2a : *s2b;
    const Leveled& l2 = a_side ? l2a : l2b;

    GPoint x = lsrc.point_of(c);
    Cell pc = phi.apply(c);
    GPoint y = lmid.point_at(pc, x.value);
    auto [y0, t] = lift(y, smid, tmid);
    // psi at the point y0
    Cell yc = lpsi_src.locate(y0);
    Cell zc = psi.apply(yc);
    GPoint z = lpsi_dst.point_at(zc, y0.value);
    auto [x0, u] = lift(z, spsi, tpsi);
    GPoint w = s2.forward(x0, u + t);
    return l2.locate(w);
  }

  bool pentagon(bool a_side, const LeveledMap& phi, const LeveledMap& psi) const {
    const Leveled& lsrc = a_side ? la : lb;
    const auto& sn = a_side ? sigma_a_node : sigma_b_node;
    const auto& ss = a_side ? sigma_a_strand : sigma_b_strand;
    int L = lsrc.level_count();
    for (int li = 0; li < L; ++li)
      for (size_t j = 0; j < lsrc.nodes(li).size(); ++j) {
        Cell c{true, li, static_cast<int>(j)};
        if (composite_cell(a_side, phi, psi, c) != sn[li][j]) return false;
      }
    for (int si = 0; si + 1 < L; ++si)
      for (size_t k = 0; k < lsrc.strands(si).size(); ++k) {
        Cell c{false, si, static_cast<int>(k)};
        if (composite_cell(a_side, phi, psi, c) != ss[si][k]) return false;
      }
    return true;
  }
};

}  // namespace

Decision check_interleaving(const ReebGraph& a, const ReebGraph& b, const Rat& eps,
                            const Rat& m, SearchBudget& budget) {
  if (eps < 0) throw std::runtime_error("interleave: eps < 0");
  if (m < 0 || m >= 1) throw std::runtime_error("interleave: m outside [0,1)");
  if (a.component_count() != b.component_count()) return {DecisionOutcome::No, std::nullopt};
  if (a.values.empty() && b.values.empty()) {
    InterleavingCertificate c;
    c.eps = eps;
    c.m = m;
    return {DecisionOutcome::Yes, c};
  }
  Instance inst(a, b, eps, m);

  bool trunc_phi = false, trunc_psi = false;
  auto phis = enumerate_maps(inst.la, inst.ltb, budget.map_limit, &trunc_phi);
  auto psis = enumerate_maps(inst.lb, inst.lta, budget.map_limit, &trunc_psi);
  if (trunc_phi || trunc_psi) budget.exhausted = true;

  long pairs = 0;
  for (const auto& phi : phis) {
    for (const auto& psi : psis) {
      if (++pairs > budget.pair_limit) {
        budget.exhausted = true;
        return {DecisionOutcome::Unknown, std::nullopt};
      }
      if (!inst.pentagon(true, phi, psi)) continue;
      if (!inst.pentagon(false, psi, phi)) continue;
      InterleavingCertificate c;
      c.eps = eps;
      c.m = m;
      c.phi = phi;
      c.psi = psi;
      c.grid = inst.grid;
      return {DecisionOutcome::Yes, c};
    }
  }
  if (budget.exhausted) return {DecisionOutcome::Unknown, std::nullopt};
  return {DecisionOutcome::No, std::nullopt};
}

namespace {

std::vector<Rat> interleaving_candidates(const ReebGraph& a, const ReebGraph& b, const Rat& m) {
  std::set<Rat> vals;
  for (const auto& [id, v] : a.values) vals.insert(v);
  for (const auto& [id, v] : b.values) vals.insert(v);
  std::set<Rat> cand;
  cand.insert(Rat(0));
  std::vector<Rat> vv(vals.begin(), vals.end());
  for (size_t i = 0; i < vv.size(); ++i)
    for (size_t j = i; j < vv.size(); ++j) {
      Rat d = rat_abs(vv[i] - vv[j]);
      cand.insert(d);
      cand.insert(d / 2);
      if (m > 0) {
        cand.insert(d / (1 - m));
        cand.insert(d / (2 * (1 - m)));
      }
    }
  return {cand.begin(), cand.end()};
}

Bracket distance_impl(const ReebGraph& a, const ReebGraph& b, const Rat& m, const Rat& tol,
                      SearchBudget& budget, InterleavingCertificate* cert_out) {
  if (a.component_count() != b.component_count()) return Bracket::infinity();
  if (a.values.empty() && b.values.empty()) return Bracket::point(Rat(0));

  auto cands = interleaving_candidates(a, b, m);
  auto decide = [&](const Rat& e) -> DecisionOutcome {
    auto d = check_interleaving(a, b, e, m, budget);
    if (d.outcome == DecisionOutcome::Yes && cert_out) *cert_out = *d.cert;
    return d.outcome;
  };

  // find the smallest feasible candidate (feasibility is monotone in eps)
  int lo = -1;  // known infeasible index
  int hi = -1;  // known feasible index
  for (int probe = static_cast<int>(cands.size()) - 1; probe >= 0; --probe) {
    auto out = decide(cands[probe]);
    if (out == DecisionOutcome::Yes) {
      hi = probe;
      break;
    }
    if (out == DecisionOutcome::Unknown) {
      Bracket br;
      br.lo = Rat(0);
      br.hi = cands[probe];
      br.budget_hit = true;
      return br;
    }
    // even the largest candidate failed: widen upward by doubling
    Rat e = cands.back() == 0 ? Rat(1) : cands.back();
    for (int k = 0; k < 24; ++k) {
      e *= 2;
      auto o2 = decide(e);
      if (o2 == DecisionOutcome::Yes) {
        Bracket br;
        br.lo = cands.back();
        br.hi = e;
        return br;
      }
      if (o2 == DecisionOutcome::Unknown) {
        Bracket br;
        br.lo = cands.back();
        br.hi = e;
        br.budget_hit = true;
        return br;
      }
    }
    Bracket br;
    br.lo = e;
    br.hi = e;
    br.budget_hit = true;
    return br;
  }

  while (lo + 1 < hi) {
    int mid = (lo + hi) / 2;
    auto out = decide(cands[mid]);
    if (out == DecisionOutcome::Yes) {
      hi = mid;
    } else if (out == DecisionOutcome::No) {
      lo = mid;
    } else {
      Bracket br;
      br.lo = cands[lo < 0 ? 0 : lo];
      br.hi = cands[hi];
      br.budget_hit = true;
      return br;
    }
  }

  Rat cstar = cands[hi];
  if (cstar == 0) return Bracket::point(Rat(0));
  // probe just below the candidate optimum
  Rat below = cstar - tol;
  Rat floor_lo = lo >= 0 ? cands[lo] : Rat(0);
  if (below < floor_lo) below = floor_lo;
  auto out = decide(below);
  // re-decide at cstar so cert_out holds the optimal certificate
  decide(cstar);
  if (out == DecisionOutcome::No) {
    Bracket br;
    br.lo = below;
    br.hi = cstar;
    br.exact = true;  // optimum equals hi up to probe tolerance
    return br;
  }
  // optimum lies strictly between candidates: bisect down to tol
  Rat L = floor_lo, H = below;
  while (H - L > tol) {
    Rat mid = (L + H) / 2;
    auto o2 = decide(mid);
    if (o2 == DecisionOutcome::Yes)
      H = mid;
    else if (o2 == DecisionOutcome::No)
      L = mid;
    else {
      Bracket br;
      br.lo = L;
      br.hi = H;
      br.budget_hit = true;
      return br;
    }
  }
  Bracket br;
  br.lo = L;
  br.hi = H;
  return br;
}

// decompose and match components: min over bijections of max pair distance
std::vector<ReebGraph> split_components(const ReebGraph& g) {
  std::vector<int> ids;
  for (const auto& [id, v] : g.values) ids.push_back(id);
  auto comp = g.component_of();
  int n = 0;
  for (int c : comp) n = std::max(n, c + 1);
  std::vector<ReebGraph> out(n);
  std::map<int, int> cof;
  for (size_t i = 0; i < ids.size(); ++i) {
    cof[ids[i]] = comp[i];
    out[comp[i]].values[ids[i]] = g.value(ids[i]);
  }
  for (const auto& e : g.edges) out[cof[e[0]]].edges.push_back(e);
  return out;
}

}  // namespace

Bracket interleaving_distance(const ReebGraph& a, const ReebGraph& b, const Rat& tol,
                              SearchBudget& budget, InterleavingCertificate* cert_out) {
  return truncated_interleaving_distance(a, b, Rat(0), tol, budget, cert_out);
}

Bracket truncated_interleaving_distance(const ReebGraph& a, const ReebGraph& b, const Rat& m,
                                        const Rat& tol, SearchBudget& budget,
                                        InterleavingCertificate* cert_out) {
  int ca = a.component_count(), cb = b.component_count();
  if (ca != cb) return Bracket::infinity();
  if (ca <= 1) return distance_impl(a, b, m, tol, budget, cert_out);

  // multiple components: min over bijections of max per-pair distance
  auto as = split_components(a), bs = split_components(b);
  int n = ca;
  std::vector<std::vector<Bracket>> d(n, std::vector<Bracket>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[i][j] = distance_impl(canonicalize(as[i]), canonicalize(bs[j]), m, tol, budget, nullptr);

  // assignment minimizing the max, evaluated on each end of the brackets
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::optional<Rat> best_lo, best_hi;
  bool budget_hit = false;
  do {
    Rat mlo(0), mhi(0);
    bool inf = false;
    for (int i = 0; i < n; ++i) {
      const Bracket& x = d[i][perm[i]];
      if (x.infinite) {
        inf = true;
        break;
      }
      mlo = rat_max(mlo, x.lo);
      mhi = rat_max(mhi, x.hi);
      budget_hit = budget_hit || x.budget_hit;
    }
    if (inf) continue;
    if (!best_hi || mhi < *best_hi) best_hi = mhi;
    if (!best_lo || mlo < *best_lo) best_lo = mlo;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!best_hi) return Bracket::infinity();
  Bracket br;
  br.lo = *best_lo;
  br.hi = *best_hi;
  br.exact = (*best_lo == *best_hi);
  br.budget_hit = budget_hit;
  return br;
}

SmoothedMap smoothing_image(const Leveled& la, const Leveled& lb, const LeveledMap& m,
                            const Rat& eps) {
  if (!leveled_map_valid(la, lb, m))
    throw std::runtime_error("smoothing_image: map is not function-preserving");
  Smoothing sa(la.graph(), eps), sb(lb.graph(), eps);
  std::set<Rat> gs(la.grid().begin(), la.grid().end());
  for (const Rat& v : lb.grid()) gs.insert(v);
  for (const auto& [id, v] : sa.graph().values) gs.insert(v);
  for (const auto& [id, v] : sb.graph().values) gs.insert(v);
  SmoothedMap out;
  out.grid.assign(gs.begin(), gs.end());
  out.src = Leveled(sa.graph(), out.grid);
  out.dst = Leveled(sb.graph(), out.grid);
  Leveled la2(la.graph(), out.grid), lb2(lb.graph(), out.grid);
  // refine the input map onto the shared grid
  auto apply_point = [&](const GPoint& p) -> GPoint {
    Cell c = la.locate(p);
    Cell ic = m.apply(c);
    return lb.point_at(ic, p.value);
  };
  int L = static_cast<int>(out.grid.size());
  out.map.node_img.assign(L, {});
  out.map.strand_img.assign(std::max(0, L - 1), {});
  auto image_cell = [&](const Cell& c) {
    GPoint x = out.src.point_of(c);
    auto [x0, t] = sa.backward(x);
    GPoint y0 = apply_point(x0);
    return out.dst.locate(sb.forward(y0, t));
  };
  for (int li = 0; li < L; ++li) {
    out.map.node_img[li].resize(out.src.nodes(li).size());
    for (size_t j = 0; j < out.src.nodes(li).size(); ++j) {
      Cell ic = image_cell(Cell{true, li, static_cast<int>(j)});
      out.map.node_img[li][j] = ic.idx;
    }
  }
  for (int si = 0; si + 1 < L; ++si) {
    out.map.strand_img[si].resize(out.src.strands(si).size());
    for (size_t k = 0; k < out.src.strands(si).size(); ++k) {
      Cell ic = image_cell(Cell{false, si, static_cast<int>(k)});
      out.map.strand_img[si][k] = ic.idx;
    }
  }
  if (!leveled_map_valid(out.src, out.dst, out.map))
    throw std::runtime_error("smoothing_image: functor image failed validation");
  return out;
}

void serialize_ilv(const InterleavingCertificate& c, std::ostream& out) {
  out << "ilv 1\n";
  out << "eps " << rat_to_string(c.eps) << "\n";
  out << "m " << rat_to_string(c.m) << "\n";
  out << "grid";
  for (const auto& g : c.grid) out << " " << rat_to_string(g);
  out << "\n";
  auto dump = [&](const char* name, const LeveledMap& m) {
    out << name << "\n";
    for (size_t li = 0; li < m.node_img.size(); ++li) {
      out << "  nodes " << li;
      for (int v : m.node_img[li]) out << " " << v;
      out << "\n";
    }
    for (size_t si = 0; si < m.strand_img.size(); ++si) {
      out << "  strands " << si;
      for (int v : m.strand_img[si]) out << " " << v;
      out << "\n";
    }
  };
  dump("phi", c.phi);
  dump("psi", c.psi);
}

}  // namespace reeb
