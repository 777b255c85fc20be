#include "reeb/landscape.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "reeb/matching.hpp"
#include "reeb/paths.hpp"
#include "reeb/persistence.hpp"
#include "reeb/sweep.hpp"

namespace reeb {

int DistanceReport::violations() const {
  int n = 0;
  for (const auto& c : checks) n += c.status == CheckStatus::Violated;
  return n;
}
int DistanceReport::indeterminates() const {
  int n = 0;
  for (const auto& c : checks) n += c.status == CheckStatus::Indeterminate;
  return n;
}

namespace {

// L <= factor * R at bracket resolution
CheckResult check_le(const std::string& label, const Bracket& L, const Rat& factor,
                     const Bracket& R) {
  CheckResult out;
  out.label = label;
  if (L.infinite && R.infinite) {
    out.status = CheckStatus::Confirmed;
    return out;
  }
  if (R.infinite) {
    out.status = CheckStatus::Confirmed;
    return out;
  }
  if (L.infinite) {
    out.status = CheckStatus::Violated;
    out.detail = "left side infinite";
    return out;
  }
  if (L.lo > factor * R.hi) {
    out.status = CheckStatus::Violated;
    std::ostringstream os;
    os << rat_to_string(L.lo) << " > " << rat_to_string(factor) << " * " << rat_to_string(R.hi);
    out.detail = os.str();
    return out;
  }
  if (L.hi <= factor * R.lo) {
    out.status = CheckStatus::Confirmed;
    return out;
  }
  out.status = CheckStatus::Indeterminate;
  return out;
}

Bracket exact_bracket(const Rat& v) { return Bracket::point(v); }

}  // namespace

Bracket component_convention(
    const std::function<Bracket(const ReebGraph&, const ReebGraph&)>& metric,
    const ReebGraph& a, const ReebGraph& b) {
  if (a.component_count() != b.component_count()) return Bracket::infinity();
  if (a.component_count() <= 1) return metric(a, b);
  // split and match
  std::vector<int> idsa, idsb;
  for (const auto& [id, v] : a.values) idsa.push_back(id);
  for (const auto& [id, v] : b.values) idsb.push_back(id);
  auto ca = a.component_of(), cb = b.component_of();
  int n = a.component_count();
  std::vector<ReebGraph> as(n), bs(n);
  for (size_t i = 0; i < idsa.size(); ++i) as[ca[i]].values[idsa[i]] = a.value(idsa[i]);
  for (size_t i = 0; i < idsb.size(); ++i) bs[cb[i]].values[idsb[i]] = b.value(idsb[i]);
  std::map<int, int> compa, compb;
  for (size_t i = 0; i < idsa.size(); ++i) compa[idsa[i]] = ca[i];
  for (size_t i = 0; i < idsb.size(); ++i) compb[idsb[i]] = cb[i];
  for (const auto& e : a.edges) as[compa[e[0]]].edges.push_back(e);
  for (const auto& e : b.edges) bs[compb[e[0]]].edges.push_back(e);

  std::vector<std::vector<Bracket>> d(n, std::vector<Bracket>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = metric(canonicalize(as[i]), canonicalize(bs[j]));
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::optional<Rat> blo, bhi;
  do {
    Rat mlo(0), mhi(0);
    bool inf = false;
    for (int i = 0; i < n; ++i) {
      if (d[i][perm[i]].infinite) {
        inf = true;
        break;
      }
      mlo = rat_max(mlo, d[i][perm[i]].lo);
      mhi = rat_max(mhi, d[i][perm[i]].hi);
    }
    if (inf) continue;
    if (!bhi || mhi < *bhi) bhi = mhi;
    if (!blo || mlo < *blo) blo = mlo;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!bhi) return Bracket::infinity();
  Bracket out;
  out.lo = *blo;
  out.hi = *bhi;
  out.exact = (*blo == *bhi);
  return out;
}

DistanceReport validate_pair(const PairInput& in, const Rat& tol, SearchBudget& budget) {
  DistanceReport r;
  r.name = in.name;
  ReebGraph a = canonicalize(in.a), b = canonicalize(in.b);
  Diagram da = extended_diagram(a), db = extended_diagram(b);
  r.d_b = bottleneck_ungraded(da, db);
  r.d_B = bottleneck_graded(da, db);
  auto fb = fdd_bounds(a, b, in.fdd_certs, Rat(0), tol, budget);
  r.d_I = fb.interleaving;
  r.d_FD = fb.bracket;
  auto ub = universal_bounds(a, b, in.zz_certs, tol, budget);
  r.delta_E = ub.bracket;
  for (const Rat& m : in.truncation_ms)
    r.d_I_m.push_back({m, truncated_interleaving_distance(a, b, m, tol, budget)});
  if (in.fa && in.fb) r.linf = linf_distance(*in.fa, *in.fb);
  if (edit_distance_defined(a, b, nullptr)) {
    auto er = edit_search(a, b, default_budget_from_env());
    r.d_E = er.bracket;
  }

  auto Bb = exact_bracket(r.d_b), BB = exact_bracket(r.d_B);
  r.checks.push_back(check_le("d_b <= d_B", Bb, Rat(1), BB));
  r.checks.push_back(check_le("d_b <= 2 d_I", Bb, Rat(2), r.d_I));
  r.checks.push_back(check_le("d_B <= 9 d_I", BB, Rat(9), r.d_I));
  r.checks.push_back(check_le("d_I <= d_FD", r.d_I, Rat(1), r.d_FD));
  r.checks.push_back(check_le("d_FD <= 3 d_I", r.d_FD, Rat(3), r.d_I));
  r.checks.push_back(check_le("d_B <= 3 d_FD", BB, Rat(3), r.d_FD));
  auto lower_side = [](const Bracket& x) {
    if (x.infinite) return Bracket::infinity();
    Bracket y;
    y.lo = x.lo;
    y.hi = x.lo;
    return y;
  };
  r.checks.push_back(check_le("d_b <= delta_E", Bb, Rat(1), r.delta_E));
  r.checks.push_back(check_le("d_B <= delta_E", BB, Rat(1), r.delta_E));
  r.checks.push_back(check_le("d_I <= delta_E", r.d_I, Rat(1), r.delta_E));
  r.checks.push_back(check_le("d_FD-lower <= delta_E", lower_side(r.d_FD), Rat(1), r.delta_E));
  if (r.linf) {
    Bracket L = exact_bracket(*r.linf);
    r.checks.push_back(check_le("d_b <= linf", Bb, Rat(1), L));
    r.checks.push_back(check_le("d_B <= linf", BB, Rat(1), L));
    r.checks.push_back(check_le("d_I <= linf", r.d_I, Rat(1), L));
    r.checks.push_back(check_le("delta_E-lower <= linf", lower_side(r.delta_E), Rat(1), L));
  }
  if (a.betti1() == 0 && b.betti1() == 0) {
    r.checks.push_back(check_le("tree: d_B <= d_FD", BB, Rat(1), r.d_FD));
    r.checks.push_back(check_le("tree: d_B <= 3 d_I", BB, Rat(3), r.d_I));
  }
  // truncated monotonicity chain (strong equivalence of the d_I^m family)
  {
    // compare each consecutive pair sorted by m (with m=0 = plain d_I)
    std::vector<std::pair<Rat, Bracket>> chain = r.d_I_m;
    chain.push_back({Rat(0), r.d_I});
    std::sort(chain.begin(), chain.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      const auto& [m, bm] = chain[i];
      const auto& [mp, bmp] = chain[i + 1];
      std::ostringstream l1, l2;
      l1 << "d_I^" << rat_to_string(m) << " <= d_I^" << rat_to_string(mp);
      r.checks.push_back(check_le(l1.str(), bm, Rat(1), bmp));
      l2 << "d_I^" << rat_to_string(mp) << " <= (1-m)/(1-m') d_I^" << rat_to_string(m);
      r.checks.push_back(check_le(l2.str(), bmp, (1 - m) / (1 - mp), bm));
    }
  }
  return r;
}

Manifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  namespace fs = std::filesystem;
  fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    fs::path q(p);
    if (q.is_absolute()) return q.string();
    return (base / q).string();
  };
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "pair") throw std::runtime_error("manifest: expected 'pair' lines");
    PairInput p;
    std::string fa, fb;
    ls >> p.name >> fa >> fb;
    p.a = parse_reeb_file(resolve(fa));
    p.b = parse_reeb_file(resolve(fb));
    std::string opt;
    while (ls >> opt) {
      if (opt == "field") {
        std::string f1, f2;
        ls >> f1 >> f2;
        p.fa = parse_field_file(resolve(f1));
        p.fb = parse_field_file(resolve(f2));
      } else if (opt == "cert") {
        std::string c;
        ls >> c;
        p.fdd_certs.push_back(parse_cert_file(resolve(c)));
      } else if (opt == "zz") {
        std::string c;
        ls >> c;
        p.zz_certs.push_back(parse_zz_file(resolve(c)));
      } else if (opt == "m") {
        std::string v;
        ls >> v;
        auto r = parse_rat(v);
        if (!r) throw std::runtime_error("manifest: bad m value");
        p.truncation_ms.push_back(*r);
      } else {
        throw std::runtime_error("manifest: unknown option " + opt);
      }
    }
    m.pairs.push_back(std::move(p));
  }
  return m;
}

std::string render_report(const DistanceReport& r) {
  std::ostringstream os;
  os << "pair " << r.name << "\n";
  os << "  d_b     = " << rat_to_string(r.d_b) << " (" << rat_to_decimal(r.d_b) << ")\n";
  os << "  d_B     = " << rat_to_string(r.d_B) << " (" << rat_to_decimal(r.d_B) << ")\n";
  os << "  d_I     = " << bracket_to_string(r.d_I) << "\n";
  for (const auto& [m, bm] : r.d_I_m)
    os << "  d_I^" << rat_to_string(m) << " = " << bracket_to_string(bm) << "\n";
  os << "  d_FD    = " << bracket_to_string(r.d_FD) << "\n";
  if (r.d_E) os << "  d_E     = " << bracket_to_string(*r.d_E) << "\n";
  os << "  delta_E = " << bracket_to_string(r.delta_E) << "\n";
  if (r.linf) os << "  linf    = " << rat_to_string(*r.linf) << "\n";
  for (const auto& c : r.checks) {
    const char* s = c.status == CheckStatus::Confirmed
                        ? "ok"
                        : (c.status == CheckStatus::Indeterminate ? "indeterminate" : "VIOLATION");
    os << "  [" << s << "] " << c.label;
    if (!c.detail.empty()) os << " : " << c.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace reeb
