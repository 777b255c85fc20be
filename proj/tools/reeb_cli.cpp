// reeb: command line front end over the reebmet C API.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reebmet.h"

namespace {

struct GraphHandle {
  rm_graph* g = nullptr;
  ~GraphHandle() { rm_graph_free(g); }
};
struct FieldHandle {
  rm_field* f = nullptr;
  ~FieldHandle() { rm_field_free(f); }
};
struct DiagramHandle {
  rm_diagram* d = nullptr;
  ~DiagramHandle() { rm_diagram_free(d); }
};

int bail(rm_status s) {
  std::fprintf(stderr, "error: %s\n", rm_last_error());
  switch (s) {
    case RM_ERR_PARSE:
    case RM_ERR_IO:
      return 2;
    case RM_ERR_PRECONDITION:
      return 3;
    case RM_ERR_BUDGET:
      return 4;
    default:
      return 1;
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  rm_string_free(s);
  return out;
}

void print_value(const std::string& label, const std::string& exact, double value) {
  std::printf("%s = %s (%.12g)\n", label.c_str(), exact.c_str(), value);
}

int load_graph(const std::string& path, GraphHandle& h) {
  rm_status s = rm_graph_load(path.c_str(), &h.g);
  return s == RM_OK ? 0 : bail(s);
}

int load_diagram_or_graph(const std::string& path, DiagramHandle& d) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".dgm") {
    rm_status s = rm_diagram_load(path.c_str(), &d.d);
    return s == RM_OK ? 0 : bail(s);
  }
  GraphHandle g;
  if (int rc = load_graph(path, g)) return rc;
  rm_status s = rm_diagram_compute(g.g, 0, &d.d);
  return s == RM_OK ? 0 : bail(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reeb graph construction and comparison measures"};
  app.require_subcommand(1);
  long budget = 0;  // 0: use REEB_BUDGET or the built-in default

  // build
  auto* build = app.add_subcommand("build", "Reeb graph of a PL scalar field");
  std::string build_in, build_out;
  bool allow_ties = false;
  build->add_option("field", build_in)->required();
  build->add_option("out", build_out)->required();
  build->add_flag("--allow-ties", allow_ties, "tie-break repeated values symbolically");

  // diagram
  auto* diagram = app.add_subcommand("diagram", "extended persistence diagram");
  std::string dgm_in, dgm_out;
  bool use_oracle = false;
  diagram->add_option("graph", dgm_in)->required();
  diagram->add_option("out", dgm_out)->required();
  diagram->add_flag("--oracle", use_oracle, "matrix-reduction cross-validation path");

  // bottleneck
  auto* bott = app.add_subcommand("bottleneck", "bottleneck distance between diagrams");
  std::string b_a, b_b;
  bool graded = false, ungraded = false;
  bott->add_option("a", b_a)->required();
  bott->add_option("b", b_b)->required();
  bott->add_flag("--graded", graded);
  bott->add_flag("--ungraded", ungraded);

  // wasserstein
  auto* wass = app.add_subcommand("wasserstein", "degree-q Wasserstein distance");
  std::string w_a, w_b, w_q = "1";
  bool w_ungraded = false;
  wass->add_option("-q,--degree", w_q);
  wass->add_option("a", w_a)->required();
  wass->add_option("b", w_b)->required();
  wass->add_flag("--ungraded", w_ungraded, "ignore point classes (default: graded)");

  // smooth
  auto* smoothc = app.add_subcommand("smooth", "epsilon smoothing, optional truncation");
  std::string s_eps, s_tau, s_in, s_out;
  smoothc->add_option("--eps", s_eps)->required();
  smoothc->add_option("--tau", s_tau);
  smoothc->add_option("in", s_in)->required();
  smoothc->add_option("out", s_out)->required();

  // interleave
  auto* inter = app.add_subcommand("interleave", "interleaving distance bracket");
  std::string i_a, i_b, i_m = "0", i_tol = "1/1000000", i_cert;
  inter->add_option("--m", i_m, "truncation slope in [0,1)");
  inter->add_option("--tol", i_tol);
  inter->add_option("--cert", i_cert, "write the certificate here on success");
  inter->add_option("a", i_a)->required();
  inter->add_option("b", i_b)->required();
  inter->add_option("--budget", budget);

  // fdd-bounds
  auto* fddc = app.add_subcommand("fdd-bounds", "functional distortion bracket");
  std::string f_a, f_b, f_delta = "0", f_tol = "1/1000000";
  std::vector<std::string> f_certs;
  fddc->add_option("a", f_a)->required();
  fddc->add_option("b", f_b)->required();
  fddc->add_option("--cert", f_certs, "map certificates feeding the upper bound");
  fddc->add_option("--delta", f_delta, "distortion sampling resolution (0: span/64)");
  fddc->add_option("--tol", f_tol);

  // edit-search
  auto* editc = app.add_subcommand("edit-search", "Reeb graph edit distance bracket");
  std::string e_a, e_b, e_seq;
  editc->add_option("a", e_a)->required();
  editc->add_option("b", e_b)->required();
  editc->add_option("--seq", e_seq, "write the best sequence here");
  editc->add_option("--budget", budget);

  // zigzag-cost
  auto* zzc = app.add_subcommand("zigzag-cost", "cost of a zigzag certificate");
  std::string z_a, z_b, z_path;
  zzc->add_option("a", z_a)->required();
  zzc->add_option("b", z_b)->required();
  zzc->add_option("zz", z_path)->required();

  // universal-bounds
  auto* unic = app.add_subcommand("universal-bounds", "universal edit distance bracket");
  std::string u_a, u_b, u_tol = "1/1000000";
  std::vector<std::string> u_zz;
  unic->add_option("a", u_a)->required();
  unic->add_option("b", u_b)->required();
  unic->add_option("--zz", u_zz, "zigzag certificates feeding the upper bound");
  unic->add_option("--tol", u_tol);

  // compare-matrix
  auto* cmp = app.add_subcommand("compare-matrix", "pairwise distances over a graph list");
  std::string c_manifest, c_tol = "1/1000000";
  int c_threads = 4;
  cmp->add_option("manifest", c_manifest)->required();
  cmp->add_option("--threads", c_threads);
  cmp->add_option("--tol", c_tol);

  // validate-landscape
  auto* val = app.add_subcommand("validate-landscape", "check the inequality landscape");
  std::string v_manifest, v_tol = "1/1000000";
  val->add_option("manifest", v_manifest)->required();
  val->add_option("--tol", v_tol);

  // fixtures
  auto* fix = app.add_subcommand("fixtures", "emit the worked-example corpus");
  std::string x_dir;
  fix->add_option("dir", x_dir)->required();

  CLI11_PARSE(app, argc, argv);

  if (*build) {
    FieldHandle f;
    rm_status s = rm_field_load(build_in.c_str(), &f.f);
    if (s != RM_OK) return bail(s);
    GraphHandle g;
    s = rm_build_reeb(f.f, allow_ties ? 1 : 0, &g.g);
    if (s != RM_OK) return bail(s);
    s = rm_graph_save(g.g, build_out.c_str());
    if (s != RM_OK) return bail(s);
    int v, e, c, b1;
    rm_graph_info(g.g, &v, &e, &c, &b1);
    std::printf("vertices=%d edges=%d components=%d betti1=%d\n", v, e, c, b1);
    return 0;
  }
  if (*diagram) {
    GraphHandle g;
    if (int rc = load_graph(dgm_in, g)) return rc;
    DiagramHandle d;
    rm_status s = rm_diagram_compute(g.g, use_oracle ? 1 : 0, &d.d);
    if (s != RM_OK) return bail(s);
    s = rm_diagram_save(d.d, dgm_out.c_str());
    return s == RM_OK ? 0 : bail(s);
  }
  if (*bott) {
    if (graded == ungraded) {
      std::fprintf(stderr, "error: choose exactly one of --graded / --ungraded\n");
      return 2;
    }
    DiagramHandle da, db;
    if (int rc = load_diagram_or_graph(b_a, da)) return rc;
    if (int rc = load_diagram_or_graph(b_b, db)) return rc;
    char* exact = nullptr;
    double v;
    rm_status s = rm_bottleneck(da.d, db.d, graded ? 1 : 0, &exact, &v);
    if (s != RM_OK) return bail(s);
    print_value(graded ? "d_B" : "d_b", take(exact), v);
    return 0;
  }
  if (*wass) {
    DiagramHandle da, db;
    if (int rc = load_diagram_or_graph(w_a, da)) return rc;
    if (int rc = load_diagram_or_graph(w_b, db)) return rc;
    char* exact = nullptr;
    double v;
    rm_status s = rm_wasserstein(da.d, db.d, w_q.c_str(), w_ungraded ? 0 : 1, &exact, &v);
    if (s != RM_OK) return bail(s);
    std::string ex = take(exact);
    if (ex.empty())
      std::printf("W_%s = %.12g (floating point)\n", w_q.c_str(), v);
    else
      std::printf("W_%s = %.12g (sum of q-th powers = %s)\n", w_q.c_str(), v, ex.c_str());
    return 0;
  }
  if (*smoothc) {
    GraphHandle g;
    if (int rc = load_graph(s_in, g)) return rc;
    GraphHandle out;
    rm_status s = rm_smooth(g.g, s_eps.c_str(), s_tau.empty() ? nullptr : s_tau.c_str(), &out.g);
    if (s != RM_OK) return bail(s);
    s = rm_graph_save(out.g, s_out.c_str());
    return s == RM_OK ? 0 : bail(s);
  }
  if (*inter) {
    GraphHandle a, b;
    if (int rc = load_graph(i_a, a)) return rc;
    if (int rc = load_graph(i_b, b)) return rc;
    char *lo = nullptr, *hi = nullptr;
    int exact = 0, infinite = 0;
    rm_status s = rm_interleave(a.g, b.g, i_m.c_str(), i_tol.c_str(), budget, &lo, &hi, &exact,
                                &infinite, i_cert.empty() ? nullptr : i_cert.c_str());
    if (s != RM_OK && s != RM_ERR_BUDGET) return bail(s);
    std::string slo = take(lo), shi = take(hi);
    if (infinite)
      std::printf("d_I%s = inf (component counts differ)\n", i_m == "0" ? "" : ("^" + i_m).c_str());
    else
      std::printf("d_I%s in [%s, %s]%s%s\n", i_m == "0" ? "" : ("^" + i_m).c_str(), slo.c_str(),
                  shi.c_str(), exact ? " exact" : "", s == RM_ERR_BUDGET ? " (budget)" : "");
    return s == RM_OK ? 0 : 4;
  }
  if (*fddc) {
    GraphHandle a, b;
    if (int rc = load_graph(f_a, a)) return rc;
    if (int rc = load_graph(f_b, b)) return rc;
    std::vector<const char*> certs;
    for (auto& c : f_certs) certs.push_back(c.c_str());
    char *lo = nullptr, *hi = nullptr;
    int infinite = 0;
    rm_status s = rm_fdd_bounds(a.g, b.g, certs.data(), static_cast<int>(certs.size()),
                                f_delta.c_str(), f_tol.c_str(), budget, &lo, &hi, &infinite);
    if (s != RM_OK) return bail(s);
    if (infinite)
      std::printf("d_FD = inf (component counts differ)\n");
    else
      std::printf("d_FD in [%s, %s]\n", take(lo).c_str(), take(hi).c_str());
    return 0;
  }
  if (*editc) {
    GraphHandle a, b;
    if (int rc = load_graph(e_a, a)) return rc;
    if (int rc = load_graph(e_b, b)) return rc;
    char *lo = nullptr, *hi = nullptr;
    int grid_opt = 0;
    rm_status s = rm_edit_search(a.g, b.g, budget, &lo, &hi, &grid_opt,
                                 e_seq.empty() ? nullptr : e_seq.c_str());
    if (s != RM_OK) return bail(s);
    std::printf("d_E in [%s, %s]%s\n", take(lo).c_str(), take(hi).c_str(),
                grid_opt ? " (grid-optimal upper)" : " (budget-limited upper)");
    return 0;
  }
  if (*zzc) {
    GraphHandle a, b;
    if (int rc = load_graph(z_a, a)) return rc;
    if (int rc = load_graph(z_b, b)) return rc;
    char* cost = nullptr;
    double v;
    rm_status s = rm_zigzag_cost(a.g, b.g, z_path.c_str(), &cost, &v);
    if (s != RM_OK) return bail(s);
    print_value("zigzag cost", take(cost), v);
    return 0;
  }
  if (*unic) {
    GraphHandle a, b;
    if (int rc = load_graph(u_a, a)) return rc;
    if (int rc = load_graph(u_b, b)) return rc;
    std::vector<const char*> zzs;
    for (auto& z : u_zz) zzs.push_back(z.c_str());
    char *lo = nullptr, *hi = nullptr;
    int infinite = 0;
    rm_status s = rm_universal_bounds(a.g, b.g, zzs.data(), static_cast<int>(zzs.size()),
                                      u_tol.c_str(), budget, &lo, &hi, &infinite);
    if (s != RM_OK) return bail(s);
    if (infinite)
      std::printf("delta_E = inf (component counts differ)\n");
    else
      std::printf("delta_E in [%s, %s]\n", take(lo).c_str(), take(hi).c_str());
    return 0;
  }
  if (*cmp) {
    char* table = nullptr;
    rm_status s = rm_compare_matrix(c_manifest.c_str(), c_tol.c_str(), budget, c_threads, &table);
    if (s != RM_OK) return bail(s);
    std::printf("%s", take(table).c_str());
    return 0;
  }
  if (*val) {
    char* report = nullptr;
    int violations = 0, indet = 0;
    rm_status s = rm_validate_landscape(v_manifest.c_str(), v_tol.c_str(), budget, &report,
                                        &violations, &indet);
    if (s != RM_OK) return bail(s);
    std::printf("%s", take(report).c_str());
    std::printf("violations=%d indeterminate=%d\n", violations, indet);
    return violations > 0 ? 1 : 0;
  }
  if (*fix) {
    int files = 0;
    rm_status s = rm_fixtures_emit(x_dir.c_str(), &files);
    if (s != RM_OK) return bail(s);
    std::printf("wrote %d files to %s\n", files, x_dir.c_str());
    return 0;
  }
  return 0;
}
