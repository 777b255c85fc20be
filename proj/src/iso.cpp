#include "reeb/iso.hpp"

#include <algorithm>
#include <set>

namespace reeb {

namespace {

struct IsoSearch {
  const ReebGraph &a, &b;
  bool use_labels;
  int max_results;
  long nodes = 0;
  long node_cap = 2000000;
  std::vector<int> av, bv;
  std::map<int, int> aidx, bidx;
  std::vector<std::vector<int>> amult, bmult;  // adjacency multiplicity
  std::vector<int> assign;                     // a-index -> b-index or -1
  std::vector<char> used;
  std::vector<std::map<int, int>> results;

  IsoSearch(const ReebGraph& a_, const ReebGraph& b_, bool labels, int maxr)
      : a(a_), b(b_), use_labels(labels), max_results(maxr) {
    for (const auto& [id, v] : a.values) av.push_back(id);
    for (const auto& [id, v] : b.values) bv.push_back(id);
    for (size_t i = 0; i < av.size(); ++i) aidx[av[i]] = static_cast<int>(i);
    for (size_t i = 0; i < bv.size(); ++i) bidx[bv[i]] = static_cast<int>(i);
    amult.assign(av.size(), std::vector<int>(av.size(), 0));
    bmult.assign(bv.size(), std::vector<int>(bv.size(), 0));
    for (const auto& e : a.edges) {
      amult[aidx[e[0]]][aidx[e[1]]]++;
      amult[aidx[e[1]]][aidx[e[0]]]++;
    }
    for (const auto& e : b.edges) {
      bmult[bidx[e[0]]][bidx[e[1]]]++;
      bmult[bidx[e[1]]][bidx[e[0]]]++;
    }
    assign.assign(av.size(), -1);
    used.assign(bv.size(), 0);
  }

  bool compatible(int ai, int bi) {
    if (use_labels && a.value(av[ai]) != b.value(bv[bi])) return false;
    if (a.degree(av[ai]) != b.degree(bv[bi])) return false;
    if (use_labels) {
      if (a.up_degree(av[ai]) != b.up_degree(bv[bi])) return false;
    }
    for (size_t j = 0; j < av.size(); ++j)
      if (assign[j] >= 0 && amult[ai][j] != bmult[bi][assign[j]]) return false;
    return true;
  }

  void rec(size_t i) {
    if (static_cast<int>(results.size()) >= max_results) return;
    if (++nodes > node_cap) return;
    if (i == av.size()) {
      std::map<int, int> w;
      for (size_t j = 0; j < av.size(); ++j) w[av[j]] = bv[assign[j]];
      results.push_back(std::move(w));
      return;
    }
    for (size_t bi = 0; bi < bv.size(); ++bi) {
      if (used[bi]) continue;
      if (!compatible(static_cast<int>(i), static_cast<int>(bi))) continue;
      assign[i] = static_cast<int>(bi);
      used[bi] = 1;
      rec(i + 1);
      assign[i] = -1;
      used[bi] = 0;
      if (static_cast<int>(results.size()) >= max_results) return;
    }
  }
};

}  // namespace

std::optional<std::map<int, int>> isomorphism_witness(const ReebGraph& a, const ReebGraph& b,
                                                      bool use_labels) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return std::nullopt;
  if (use_labels) {
    auto ca = a.critical_values(), cb = b.critical_values();
    if (ca != cb) {
      // multisets of labels must also agree
      std::multiset<Rat> ma, mb;
      for (const auto& [id, v] : a.values) ma.insert(v);
      for (const auto& [id, v] : b.values) mb.insert(v);
      if (ma != mb) return std::nullopt;
    }
  }
  IsoSearch s(a, b, use_labels, 1);
  s.rec(0);
  if (s.results.empty()) return std::nullopt;
  return s.results.front();
}

std::vector<std::map<int, int>> unlabeled_witnesses(const ReebGraph& a, const ReebGraph& b,
                                                    int max_count) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return {};
  auto degseq = [](const ReebGraph& g) {
    std::vector<int> d;
    for (const auto& [id, v] : g.values) d.push_back(g.degree(id));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degseq(a) != degseq(b)) return {};
  IsoSearch s(a, b, false, max_count);
  s.node_cap = 100000;
  s.rec(0);
  return s.results;
}

}  // namespace reeb
