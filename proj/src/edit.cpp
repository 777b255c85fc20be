#include "reeb/edit.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reeb/iso.hpp"
#include "reeb/matching.hpp"
#include "reeb/persistence.hpp"

namespace reeb {

const char* defkind_name(DefKind k) {
  switch (k) {
    case DefKind::Birth: return "birth";
    case DefKind::Death: return "death";
    case DefKind::Relabel: return "relabel";
    case DefKind::K1: return "k1";
    case DefKind::K2: return "k2";
    case DefKind::K3: return "k3";
  }
  return "?";
}

namespace {

std::vector<std::pair<int, int>> incident_edges(const ReebGraph& g, int v) {
  std::vector<std::pair<int, int>> out;  // (edge idx, other endpoint)
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edges[e][0] == v) out.push_back({e, g.edges[e][1]});
    else if (g.edges[e][1] == v) out.push_back({e, g.edges[e][0]});
  }
  return out;
}

bool is_leaf(const ReebGraph& g, int root, int tip) {
  if (!g.has_vertex(root) || !g.has_vertex(tip)) return false;
  if (g.degree(tip) != 1) return false;
  for (const auto& e : g.edges)
    if ((e[0] == root && e[1] == tip) || (e[0] == tip && e[1] == root)) return true;
  return false;
}

// order-inversion precondition: the set of strictly inverted pairs must be
// at most two disjoint pairs, each non-adjacent
void check_relabel_order(const ReebGraph& before, const std::vector<std::pair<int, Rat>>& asg) {
  std::map<int, Rat> after;
  for (const auto& [id, v] : before.values) after[id] = v;
  for (const auto& [id, v] : asg) {
    if (!before.has_vertex(id)) throw std::runtime_error("relabel: missing vertex");
    after[id] = v;
  }
  std::vector<int> ids;
  for (const auto& [id, v] : before.values) ids.push_back(id);
  std::vector<std::pair<int, int>> inverted;
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j) {
      const Rat &b1 = before.value(ids[i]), &b2 = before.value(ids[j]);
      const Rat &a1 = after[ids[i]], &a2 = after[ids[j]];
      if (b1 == b2 || a1 == a2) continue;  // ties are not strict inversions
      if ((b1 < b2) != (a1 < a2)) inverted.push_back({ids[i], ids[j]});
    }
  if (inverted.size() > 2) throw std::runtime_error("relabel: too many order inversions");
  if (inverted.size() == 2) {
    auto& p = inverted[0];
    auto& q = inverted[1];
    if (p.first == q.first || p.first == q.second || p.second == q.first || p.second == q.second)
      throw std::runtime_error("relabel: inverted pairs overlap");
  }
  for (auto& [x, y] : inverted) {
    for (const auto& e : before.edges)
      if ((e[0] == x && e[1] == y) || (e[0] == y && e[1] == x))
        throw std::runtime_error("relabel: inverted pair is adjacent");
  }
}

}  // namespace

ReebGraph apply(const Deformation& step, const ReebGraph& g) {
  ReebGraph out = g;
  switch (step.kind) {
    case DefKind::Birth: {
      // locate the edge to bisect
      int seen = 0, found = -1;
      for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[e];
        if ((ed[0] == step.edge_u && ed[1] == step.edge_w) ||
            (ed[0] == step.edge_w && ed[1] == step.edge_u)) {
          if (seen == step.edge_copy) {
            found = e;
            break;
          }
          ++seen;
        }
      }
      if (found < 0) throw std::runtime_error("birth: edge not found");
      if (g.has_vertex(step.root_id) || g.has_vertex(step.tip_id))
        throw std::runtime_error("birth: id already in use");
      Rat lo = rat_min(g.value(step.edge_u), g.value(step.edge_w));
      Rat hi = rat_max(g.value(step.edge_u), g.value(step.edge_w));
      if (!(lo <= step.root_value && step.root_value <= hi))
        throw std::runtime_error("birth: root value outside the bisected edge");
      out.edges.erase(out.edges.begin() + found);
      out.values[step.root_id] = step.root_value;
      out.values[step.tip_id] = step.tip_value;
      out.edges.push_back({step.edge_u, step.root_id});
      out.edges.push_back({step.root_id, step.edge_w});
      out.edges.push_back({step.root_id, step.tip_id});
      break;
    }
    case DefKind::Death: {
      if (!is_leaf(g, step.root_id, step.tip_id)) throw std::runtime_error("death: not a leaf");
      if (g.degree(step.root_id) != 3)
        throw std::runtime_error("death: root is not degree 3");
      // remove the leaf edge and tip, splice the remaining two edges
      std::vector<std::array<int, 2>> edges2;
      std::vector<int> nbr;
      for (const auto& e : g.edges) {
        bool leaf_edge = (e[0] == step.root_id && e[1] == step.tip_id) ||
                         (e[0] == step.tip_id && e[1] == step.root_id);
        if (leaf_edge) continue;
        if (e[0] == step.root_id) {
          nbr.push_back(e[1]);
          continue;
        }
        if (e[1] == step.root_id) {
          nbr.push_back(e[0]);
          continue;
        }
        edges2.push_back(e);
      }
      if (nbr.size() != 2) throw std::runtime_error("death: root splice failed");
      edges2.push_back({nbr[0], nbr[1]});
      out.edges = std::move(edges2);
      out.values.erase(step.root_id);
      out.values.erase(step.tip_id);
      break;
    }
    case DefKind::Relabel: {
      check_relabel_order(g, step.relabel);
      for (const auto& [id, v] : step.relabel) out.values[id] = v;
      break;
    }
    case DefKind::K2: {
      int u1 = step.k_u1, u2 = step.k_u2;
      if (g.degree(u1) != 3 || g.degree(u2) != 3) throw std::runtime_error("k2: need degree 3");
      if (g.up_degree(u1) != 1 || g.down_degree(u2) != 1)
        throw std::runtime_error("k2: pattern mismatch (need 2-down + 2-up pair)");
      // collect outer edges
      std::vector<int> downs, ups;
      bool conn = false;
      for (auto& [e, o] : incident_edges(g, u1)) {
        if (o == u2) {
          conn = true;
          continue;
        }
        downs.push_back(o);
      }
      for (auto& [e, o] : incident_edges(g, u2)) {
        if (o == u1) continue;
        ups.push_back(o);
      }
      if (!conn || downs.size() != 2 || ups.size() != 2)
        throw std::runtime_error("k2: pattern mismatch");
      std::sort(downs.begin(), downs.end());
      std::sort(ups.begin(), ups.end());
      // series -> parallel: u2 takes (downs[0], ups[0]); u1 keeps (downs[1], ups[1])
      std::vector<std::array<int, 2>> edges2;
      for (const auto& e : g.edges) {
        bool touches = e[0] == u1 || e[1] == u1 || e[0] == u2 || e[1] == u2;
        if (!touches) edges2.push_back(e);
      }
      edges2.push_back({u1, u2});
      edges2.push_back({downs[0], u2});
      edges2.push_back({ups[0], u2});
      edges2.push_back({downs[1], u1});
      edges2.push_back({ups[1], u1});
      out.edges = std::move(edges2);
      out.values[u1] = step.k_v1;
      out.values[u2] = step.k_v2;
      break;
    }
    case DefKind::K3: {
      int u1 = step.k_u1, u2 = step.k_u2;
      if (g.degree(u1) != 3 || g.degree(u2) != 3) throw std::runtime_error("k3: need degree 3");
      if (g.up_degree(u1) != 2 - g.down_degree(u1) + 0) {
        // fall through; detailed pattern checked below
      }
      std::vector<int> downs, ups;
      bool conn = false;
      for (int u : {u1, u2}) {
        for (auto& [e, o] : incident_edges(g, u)) {
          int other = o;
          if ((u == u1 && other == u2) || (u == u2 && other == u1)) {
            conn = true;
            continue;
          }
          if (g.value(other) < g.value(u) ||
              (g.value(other) == g.value(u) && other < u))
            downs.push_back(other);
          else
            ups.push_back(other);
        }
      }
      if (!conn || downs.size() != 2 || ups.size() != 2)
        throw std::runtime_error("k3: pattern mismatch (need two 1-up-1-down vertices)");
      // parallel -> series: u1 takes both downs, u2 both ups
      std::vector<std::array<int, 2>> edges2;
      for (const auto& e : g.edges) {
        bool touches = e[0] == u1 || e[1] == u1 || e[0] == u2 || e[1] == u2;
        if (!touches) edges2.push_back(e);
      }
      edges2.push_back({u1, u2});
      edges2.push_back({downs[0], u1});
      edges2.push_back({downs[1], u1});
      edges2.push_back({ups[0], u2});
      edges2.push_back({ups[1], u2});
      out.edges = std::move(edges2);
      out.values[u1] = step.k_v1;
      out.values[u2] = step.k_v2;
      break;
    }
    case DefKind::K1: {
      // move the leaf rooted at k_u1 (which bisects an up/down-leaf sharing a
      // root with the target leaf edge (edge_u, edge_w))
      int p = step.k_u1;  // moving root
      if (g.degree(p) != 3) throw std::runtime_error("k1: moving root must be degree 3");
      int r = step.edge_u, t2 = step.edge_w;
      if (!is_leaf(g, r, t2)) throw std::runtime_error("k1: target is not a leaf");
      // p must bisect a leaf sharing root r: neighbors r and a tip t1
      std::vector<int> nbr;
      for (auto& [e, o] : incident_edges(g, p)) nbr.push_back(o);
      std::sort(nbr.begin(), nbr.end());
      bool shares = std::find(nbr.begin(), nbr.end(), r) != nbr.end();
      if (!shares) throw std::runtime_error("k1: leaves do not share a root");
      int t1 = -1, q = -1;
      for (int o : nbr) {
        if (o == r) continue;
        if (g.degree(o) == 1 && t1 < 0 &&
            ((g.value(o) > g.value(p)) == (g.value(t2) > g.value(r))))
          t1 = o;
        else
          q = o;
      }
      if (t1 < 0 || q < 0) throw std::runtime_error("k1: pattern mismatch");
      std::vector<std::array<int, 2>> edges2;
      for (const auto& e : g.edges) {
        bool rp = (e[0] == r && e[1] == p) || (e[0] == p && e[1] == r);
        bool pt1 = (e[0] == p && e[1] == t1) || (e[0] == t1 && e[1] == p);
        bool rt2 = (e[0] == r && e[1] == t2) || (e[0] == t2 && e[1] == r);
        if (rp || pt1 || rt2) continue;
        edges2.push_back(e);
      }
      edges2.push_back({r, t1});   // restored first leaf
      edges2.push_back({r, p});    // p bisects the second leaf
      edges2.push_back({p, t2});
      out.edges = std::move(edges2);
      out.values[p] = step.k_v1;
      out.values[q] = step.k_v2;
      break;
    }
  }
  out.validate(true);
  return out;
}

Deformation inverse(const Deformation& step, const ReebGraph& before) {
  Deformation inv;
  switch (step.kind) {
    case DefKind::Birth: {
      inv.kind = DefKind::Death;
      inv.root_id = step.root_id;
      inv.tip_id = step.tip_id;
      break;
    }
    case DefKind::Death: {
      inv.kind = DefKind::Birth;
      // the spliced edge after death joins the root's two non-tip neighbors
      std::vector<int> nbr;
      for (auto& [e, o] : incident_edges(before, step.root_id))
        if (o != step.tip_id) nbr.push_back(o);
      inv.edge_u = nbr.at(0);
      inv.edge_w = nbr.at(1);
      inv.edge_copy = 0;
      inv.root_id = step.root_id;
      inv.tip_id = step.tip_id;
      inv.root_value = before.value(step.root_id);
      inv.tip_value = before.value(step.tip_id);
      break;
    }
    case DefKind::Relabel: {
      inv.kind = DefKind::Relabel;
      for (const auto& [id, v] : step.relabel) inv.relabel.push_back({id, before.value(id)});
      break;
    }
    case DefKind::K2: {
      inv.kind = DefKind::K3;
      inv.k_u1 = step.k_u1;
      inv.k_u2 = step.k_u2;
      inv.k_v1 = before.value(step.k_u1);
      inv.k_v2 = before.value(step.k_u2);
      break;
    }
    case DefKind::K3: {
      inv.kind = DefKind::K2;
      inv.k_u1 = step.k_u1;
      inv.k_u2 = step.k_u2;
      inv.k_v1 = before.value(step.k_u1);
      inv.k_v2 = before.value(step.k_u2);
      break;
    }
    case DefKind::K1: {
      inv.kind = DefKind::K1;
      inv.k_u1 = step.k_u1;
      // target leaf of the inverse: the leaf p came from
      std::vector<int> nbr;
      for (auto& [e, o] : incident_edges(before, step.k_u1)) nbr.push_back(o);
      int r = step.edge_u;
      int t1 = -1;
      for (int o : nbr)
        if (o != r && before.degree(o) == 1 &&
            ((before.value(o) > before.value(step.k_u1)) ==
             (before.value(step.edge_w) > before.value(r))))
          t1 = o;
      inv.edge_u = r;
      inv.edge_w = t1;
      inv.k_v1 = before.value(step.k_u1);
      int q = -1;
      for (int o : nbr)
        if (o != r && o != t1) q = o;
      inv.k_u2 = q;
      inv.k_v2 = before.value(q);
      break;
    }
  }
  return inv;
}

Rat deformation_cost(const Deformation& step) {
  switch (step.kind) {
    case DefKind::Birth:
      return rat_abs(step.root_value - step.tip_value) / 2;
    case DefKind::Death:
      return Rat(-1);  // needs the graph; handled in sequence_cost
    case DefKind::Relabel:
      return Rat(-1);
    default:
      return Rat(-1);
  }
}

Rat sequence_cost(const EditSequence& s) {
  Rat total(0);
  ReebGraph g = s.start;
  for (const auto& st : s.steps) {
    Rat c(0);
    switch (st.kind) {
      case DefKind::Birth:
        c = rat_abs(st.root_value - st.tip_value) / 2;
        break;
      case DefKind::Death:
        c = rat_abs(g.value(st.root_id) - g.value(st.tip_id)) / 2;
        break;
      case DefKind::Relabel:
        for (const auto& [id, v] : st.relabel) c = rat_max(c, rat_abs(g.value(id) - v));
        break;
      case DefKind::K1:
      case DefKind::K2:
      case DefKind::K3:
        c = rat_max(rat_abs(g.value(st.k_u1) - st.k_v1), rat_abs(g.value(st.k_u2) - st.k_v2));
        break;
    }
    total += c;
    g = apply(st, g);
  }
  return total;
}

ReebGraph sequence_result(const EditSequence& s) {
  ReebGraph g = s.start;
  for (const auto& st : s.steps) g = apply(st, g);
  return g;
}

bool edit_distance_defined(const ReebGraph& a, const ReebGraph& b, std::string* reason) {
  if (a.betti1() != b.betti1()) {
    if (reason) *reason = "d_E undefined: first Betti numbers differ (non-homeomorphic domains)";
    return false;
  }
  if (a.component_count() != b.component_count()) {
    if (reason) *reason = "d_E undefined: component counts differ";
    return false;
  }
  return true;
}

namespace {

// invariant bucket key: per-vertex (value, sorted neighbor values) plus the
// edge multiset; exact dedup by isomorphism within buckets
std::string state_key(const ReebGraph& g) {
  std::map<int, std::vector<std::string>> nbr;
  for (const auto& e : g.edges) {
    nbr[e[0]].push_back(rat_to_string(g.value(e[1])));
    nbr[e[1]].push_back(rat_to_string(g.value(e[0])));
  }
  std::ostringstream os;
  std::vector<std::string> vs;
  for (const auto& [id, v] : g.values) {
    std::ostringstream t;
    t << rat_to_string(v) << ":";
    auto& ns = nbr[id];
    std::sort(ns.begin(), ns.end());
    for (auto& s : ns) t << s << ",";
    vs.push_back(t.str());
  }
  std::sort(vs.begin(), vs.end());
  for (auto& s : vs) os << s << ";";
  return os.str();
}

struct Leaf {
  int root, tip;
};

std::vector<Leaf> leaves_of(const ReebGraph& g) {
  std::vector<Leaf> out;
  for (const auto& [id, v] : g.values) {
    if (g.degree(id) != 1) continue;
    for (const auto& e : g.edges) {
      if (e[0] == id) out.push_back({e[1], id});
      else if (e[1] == id) out.push_back({e[0], id});
    }
  }
  return out;
}

}  // namespace

EditSearchResult edit_search(const ReebGraph& a, const ReebGraph& b, long node_budget) {
  EditSearchResult res;
  std::string why;
  if (!edit_distance_defined(a, b, &why)) throw std::runtime_error(why);

  Diagram da = extended_diagram(a), db = extended_diagram(b);
  Rat lower = bottleneck_graded(da, db);

  // grid: critical values of both plus all pairwise midpoints
  std::set<Rat> grid_set;
  for (const auto& [id, v] : a.values) grid_set.insert(v);
  for (const auto& [id, v] : b.values) grid_set.insert(v);
  {
    std::vector<Rat> vs(grid_set.begin(), grid_set.end());
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) grid_set.insert((vs[i] + vs[j]) / 2);
  }
  std::vector<Rat> grid(grid_set.begin(), grid_set.end());
  // flat-birth positions: midpoints of target and source leaf spans
  std::set<Rat> birth_set;
  for (const auto& lf : leaves_of(b)) birth_set.insert((b.value(lf.root) + b.value(lf.tip)) / 2);
  for (const auto& lf : leaves_of(a)) birth_set.insert((a.value(lf.root) + a.value(lf.tip)) / 2);

  ReebGraph target = canonicalize(b);
  int vcap = a.vertex_count() + b.vertex_count() + 4;
  std::vector<int> target_degseq;
  for (const auto& [id, v] : target.values) target_degseq.push_back(target.degree(id));
  std::sort(target_degseq.begin(), target_degseq.end());

  struct QItem {
    Rat cost;
    long seq;  // tie-break for determinism
    ReebGraph g;
    std::vector<Deformation> steps;
    bool operator>(const QItem& o) const {
      if (cost != o.cost) return cost > o.cost;
      return seq > o.seq;
    }
  };
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;
  std::map<std::string, std::vector<std::pair<ReebGraph, Rat>>> seen;
  long seqno = 0;

  auto push = [&](const ReebGraph& g, const Rat& cost, std::vector<Deformation> steps) {
    if (g.vertex_count() > vcap) return;
    auto key = state_key(g);
    auto& bucket = seen[key];
    for (auto& [sg, sc] : bucket) {
      if (sc <= cost && is_isomorphic(sg, g)) return;
    }
    bucket.push_back({g, cost});
    pq.push(QItem{cost, seqno++, g, std::move(steps)});
  };

  long expansions = 0;
  bool budget_hit = false;
  std::optional<Rat> best_cost;
  std::optional<EditSequence> best_seq;

  // constructive candidates first: they bound the search from above
  auto consider = [&](const std::vector<Deformation>& steps) {
    EditSequence s{a, steps};
    try {
      ReebGraph end = sequence_result(s);
      if (!is_isomorphic(canonicalize(end), target)) return;
      Rat c = sequence_cost(s);
      if (!best_cost || c < *best_cost) {
        best_cost = c;
        best_seq = s;
      }
    } catch (const std::exception&) {
    }
  };
  // snap along an unlabeled isomorphism
  for (const auto& w : unlabeled_witnesses(a, target, 6)) {
    Deformation d;
    d.kind = DefKind::Relabel;
    for (auto& [x, y] : w)
      if (a.value(x) != target.value(y)) d.relabel.push_back({x, target.value(y)});
    if (!d.relabel.empty()) consider({d});
  }
  // leaf exchange: birth a flat pair at the midpoint of a source leaf's
  // span, swap it with that leaf, drop the flattened leaf
  {
    int fresh0 = std::max(a.fresh_id(), b.fresh_id());
    for (const auto& la : leaves_of(a)) {
      Rat rv = a.value(la.root), tv = a.value(la.tip);
      if (rv == tv) continue;
      Rat mid = (rv + tv) / 2;
      for (int e = 0; e < a.edge_count(); ++e) {
        const auto& ed = a.edges[e];
        if (ed[0] == la.tip || ed[1] == la.tip) continue;
        Rat lo = rat_min(a.value(ed[0]), a.value(ed[1]));
        Rat hi = rat_max(a.value(ed[0]), a.value(ed[1]));
        if (!(lo <= mid && mid <= hi)) continue;
        int copy = 0;
        for (int e2 = 0; e2 < e; ++e2)
          if (a.edges[e2] == ed) ++copy;
        Deformation birth;
        birth.kind = DefKind::Birth;
        birth.edge_u = ed[0];
        birth.edge_w = ed[1];
        birth.edge_copy = copy;
        birth.root_id = fresh0;
        birth.tip_id = fresh0 + 1;
        birth.root_value = mid;
        birth.tip_value = mid;
        Deformation ex;
        ex.kind = DefKind::Relabel;
        ex.relabel = {{fresh0, rv}, {fresh0 + 1, tv}, {la.root, mid}, {la.tip, mid}};
        Deformation death;
        death.kind = DefKind::Death;
        death.root_id = la.root;
        death.tip_id = la.tip;
        consider({birth, ex, death});
      }
    }
  }

  push(a, Rat(0), {});
  while (!pq.empty()) {
    QItem cur = pq.top();
    pq.pop();
    if (best_cost && cur.cost >= *best_cost) break;  // Dijkstra: done
    if (++expansions > node_budget) {
      budget_hit = true;
      break;
    }
    if (is_isomorphic(cur.g, target)) {
      best_cost = cur.cost;
      best_seq = EditSequence{a, cur.steps};
      break;  // first pop is optimal under this move set
    }
    const ReebGraph& g = cur.g;

    auto try_move = [&](const Deformation& d, const Rat& c) {
      if (best_cost && cur.cost + c >= *best_cost) return;  // cannot improve
      try {
        ReebGraph ng = apply(d, g);
        auto steps = cur.steps;
        steps.push_back(d);
        push(ng, cur.cost + c, std::move(steps));
      } catch (const std::exception&) {
      }
    };

    // snap relabel along unlabeled isomorphism witnesses
    std::vector<int> gseq;
    for (const auto& [id, v] : g.values) gseq.push_back(g.degree(id));
    std::sort(gseq.begin(), gseq.end());
    for (const auto& w : gseq == target_degseq ? unlabeled_witnesses(g, target, 6)
                                               : std::vector<std::map<int, int>>{}) {
      Deformation d;
      d.kind = DefKind::Relabel;
      Rat c(0);
      bool nontrivial = false;
      for (auto& [x, y] : w) {
        if (g.value(x) != target.value(y)) {
          d.relabel.push_back({x, target.value(y)});
          c = rat_max(c, rat_abs(g.value(x) - target.value(y)));
          nontrivial = true;
        }
      }
      if (nontrivial) try_move(d, c);
    }
    // flat births (at most two flat pairs alive at a time)
    int flat_count = 0;
    for (const auto& lf : leaves_of(g))
      if (g.value(lf.root) == g.value(lf.tip)) ++flat_count;
    int fresh = std::max(g.fresh_id(), b.fresh_id());
    if (flat_count < 2) {
      for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[e];
        // count same-endpoint copies before this index for the copy number
        int copy = 0;
        for (int e2 = 0; e2 < e; ++e2)
          if (g.edges[e2] == ed) ++copy;
        Rat lo = rat_min(g.value(ed[0]), g.value(ed[1]));
        Rat hi = rat_max(g.value(ed[0]), g.value(ed[1]));
        for (const Rat& m : birth_set) {
          if (!(lo <= m && m <= hi)) continue;
          Deformation d;
          d.kind = DefKind::Birth;
          d.edge_u = ed[0];
          d.edge_w = ed[1];
          d.edge_copy = copy;
          d.root_id = fresh;
          d.tip_id = fresh + 1;
          d.root_value = m;
          d.tip_value = m;
          try_move(d, Rat(0));
        }
      }
    }
    // deaths (flat ones are free, real ones cost half the span)
    for (const auto& lf : leaves_of(g)) {
      if (g.degree(lf.root) != 3) continue;
      Deformation d;
      d.kind = DefKind::Death;
      d.root_id = lf.root;
      d.tip_id = lf.tip;
      try_move(d, rat_abs(g.value(lf.root) - g.value(lf.tip)) / 2);
    }
    // exchange relabel: flat pair takes over a leaf's position
    for (const auto& fl : leaves_of(g)) {
      if (g.value(fl.root) != g.value(fl.tip)) continue;
      for (const auto& lf : leaves_of(g)) {
        if (lf.root == fl.root && lf.tip == fl.tip) continue;
        if (g.value(lf.root) == g.value(lf.tip)) continue;
        Rat mid = (g.value(lf.root) + g.value(lf.tip)) / 2;
        if (mid != g.value(fl.root)) continue;
        Deformation d;
        d.kind = DefKind::Relabel;
        d.relabel = {{fl.root, g.value(lf.root)},
                     {fl.tip, g.value(lf.tip)},
                     {lf.root, mid},
                     {lf.tip, mid}};
        Rat c(0);
        for (auto& [id, v] : d.relabel) c = rat_max(c, rat_abs(g.value(id) - v));
        try_move(d, c);
      }
    }
    // single-vertex relabels onto target critical values
    for (const auto& [id, v] : g.values) {
      for (const auto& [tid, t] : b.values) {
        if (t == v) continue;
        Deformation d;
        d.kind = DefKind::Relabel;
        d.relabel = {{id, t}};
        try_move(d, rat_abs(v - t));
      }
    }
    // births of full target leaves (for structural gaps)
    for (const auto& lf : leaves_of(b)) {
      Rat rv = b.value(lf.root), tv = b.value(lf.tip);
      for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[e];
        int copy = 0;
        for (int e2 = 0; e2 < e; ++e2)
          if (g.edges[e2] == ed) ++copy;
        Rat lo = rat_min(g.value(ed[0]), g.value(ed[1]));
        Rat hi = rat_max(g.value(ed[0]), g.value(ed[1]));
        if (!(lo <= rv && rv <= hi)) continue;
        Deformation d;
        d.kind = DefKind::Birth;
        d.edge_u = ed[0];
        d.edge_w = ed[1];
        d.edge_copy = copy;
        d.root_id = fresh;
        d.tip_id = fresh + 1;
        d.root_value = rv;
        d.tip_value = tv;
        try_move(d, rat_abs(rv - tv) / 2);
      }
    }
  }

  Bracket br;
  br.lo = lower;
  if (best_cost) {
    br.hi = rat_max(*best_cost, lower);
    br.exact = (br.lo == br.hi);
    res.grid_optimal = !budget_hit;
  } else {
    br.hi = Rat(0);
    br.budget_hit = true;
    budget_hit = true;
    // no sequence found within budget: report an unbounded-above bracket
    br.infinite = true;
  }
  br.budget_hit = budget_hit;
  res.bracket = br;
  res.best = best_seq;
  return res;
}

EditSequence parse_seq(std::istream& in) {
  EditSequence s;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "seq") throw std::runtime_error("seq: missing 'seq 1' header");
      int v;
      ls >> v;
      if (v != 1) throw std::runtime_error("seq: unsupported version");
      header = true;
      continue;
    }
    Deformation d;
    if (tag == "b") {
      d.kind = DefKind::Birth;
      std::string rv, tv;
      ls >> d.edge_u >> d.edge_w >> d.edge_copy >> d.root_id >> rv >> d.tip_id >> tv;
      d.root_value = *parse_rat(rv);
      d.tip_value = *parse_rat(tv);
    } else if (tag == "d") {
      d.kind = DefKind::Death;
      ls >> d.root_id >> d.tip_id;
    } else if (tag == "r") {
      d.kind = DefKind::Relabel;
      int id;
      std::string v;
      while (ls >> id >> v) d.relabel.push_back({id, *parse_rat(v)});
    } else if (tag == "k1" || tag == "k2" || tag == "k3") {
      d.kind = tag == "k1" ? DefKind::K1 : (tag == "k2" ? DefKind::K2 : DefKind::K3);
      std::string v1, v2;
      ls >> d.k_u1 >> d.k_u2 >> v1 >> v2;
      d.k_v1 = *parse_rat(v1);
      d.k_v2 = *parse_rat(v2);
      if (d.kind == DefKind::K1) {
        ls >> d.edge_u >> d.edge_w;
      }
    } else {
      throw std::runtime_error("seq: unknown tag " + tag);
    }
    s.steps.push_back(d);
  }
  if (!header) throw std::runtime_error("seq: empty input");
  return s;
}

EditSequence parse_seq_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_seq(in);
}

void serialize_seq(const EditSequence& s, std::ostream& out) {
  out << "seq 1\n";
  for (const auto& d : s.steps) {
    switch (d.kind) {
      case DefKind::Birth:
        out << "b " << d.edge_u << " " << d.edge_w << " " << d.edge_copy << " " << d.root_id
            << " " << rat_to_string(d.root_value) << " " << d.tip_id << " "
            << rat_to_string(d.tip_value) << "\n";
        break;
      case DefKind::Death:
        out << "d " << d.root_id << " " << d.tip_id << "\n";
        break;
      case DefKind::Relabel: {
        out << "r";
        for (auto& [id, v] : d.relabel) out << " " << id << " " << rat_to_string(v);
        out << "\n";
        break;
      }
      case DefKind::K1:
        out << "k1 " << d.k_u1 << " " << d.k_u2 << " " << rat_to_string(d.k_v1) << " "
            << rat_to_string(d.k_v2) << " " << d.edge_u << " " << d.edge_w << "\n";
        break;
      case DefKind::K2:
      case DefKind::K3:
        out << (d.kind == DefKind::K2 ? "k2 " : "k3 ") << d.k_u1 << " " << d.k_u2 << " "
            << rat_to_string(d.k_v1) << " " << rat_to_string(d.k_v2) << "\n";
        break;
    }
  }
}

}  // namespace reeb
