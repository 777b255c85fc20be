#include "reebmet.h"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "reeb/fdd.hpp"
#include "reeb/field.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/graph.hpp"
#include "reeb/interleave.hpp"
#include "reeb/iso.hpp"
#include "reeb/landscape.hpp"
#include "reeb/matching.hpp"
#include "reeb/paths.hpp"
#include "reeb/persistence.hpp"
#include "reeb/sweep.hpp"
#include "reeb/zigzag.hpp"

using namespace reeb;

struct rm_graph {
  ReebGraph g;
};
struct rm_field {
  ScalarField f;
};
struct rm_diagram {
  Diagram d;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rm_status fail(rm_status code, const std::string& msg) {
  t_last_error = msg;
  return code;
}

rm_status classify(const std::exception& e) {
  std::string m = e.what();
  if (m.find("cannot open") != std::string::npos) return fail(RM_ERR_IO, m);
  for (const char* k : {"header", "bad ", "unknown", "unsupported", "missing", "malformed",
                        "duplicate", "empty input"})
    if (m.find(k) != std::string::npos) return fail(RM_ERR_PARSE, m);
  return fail(RM_ERR_PRECONDITION, m);
}

template <typename F>
rm_status guarded(F&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return classify(e);
  } catch (...) {
    return fail(RM_ERR_INTERNAL, "unknown error");
  }
}

Rat parse_or_throw(const char* s, const char* what) {
  auto r = parse_rat(s ? s : "");
  if (!r) throw std::runtime_error(std::string("bad ") + what + " value");
  return *r;
}

void emit_bracket(const Bracket& br, char** lo, char** hi, int* infinite) {
  if (infinite) *infinite = br.infinite ? 1 : 0;
  if (br.infinite) {
    if (lo) *lo = dup_string("inf");
    if (hi) *hi = dup_string("inf");
    return;
  }
  if (lo) *lo = dup_string(rat_to_string(br.lo));
  if (hi) *hi = dup_string(rat_to_string(br.hi));
}

}  // namespace

extern "C" {

const char* rm_last_error(void) { return t_last_error.c_str(); }

void rm_string_free(char* s) { std::free(s); }

rm_status rm_field_load(const char* path, rm_field** out) {
  return guarded([&] {
    auto f = new rm_field{parse_field_file(path)};
    *out = f;
    return RM_OK;
  });
}

rm_status rm_field_save(const rm_field* f, const char* path) {
  return guarded([&] {
    std::ofstream o(path);
    if (!o) throw std::runtime_error(std::string("cannot open ") + path);
    serialize_field(f->f, o);
    return RM_OK;
  });
}

void rm_field_free(rm_field* f) { delete f; }

rm_status rm_graph_load(const char* path, rm_graph** out) {
  return guarded([&] {
    *out = new rm_graph{parse_reeb_file(path)};
    return RM_OK;
  });
}

rm_status rm_graph_save(const rm_graph* g, const char* path) {
  return guarded([&] {
    std::ofstream o(path);
    if (!o) throw std::runtime_error(std::string("cannot open ") + path);
    serialize_reeb(g->g, o);
    return RM_OK;
  });
}

void rm_graph_free(rm_graph* g) { delete g; }

rm_status rm_build_reeb(const rm_field* f, int allow_ties, rm_graph** out) {
  return guarded([&] {
    *out = new rm_graph{build_reeb(f->f, allow_ties != 0)};
    return RM_OK;
  });
}

rm_status rm_canonicalize(const rm_graph* g, rm_graph** out) {
  return guarded([&] {
    *out = new rm_graph{canonicalize(g->g)};
    return RM_OK;
  });
}

rm_status rm_graph_info(const rm_graph* g, int* vertices, int* edges, int* components,
                        int* betti1) {
  return guarded([&] {
    if (vertices) *vertices = g->g.vertex_count();
    if (edges) *edges = g->g.edge_count();
    if (components) *components = g->g.component_count();
    if (betti1) *betti1 = g->g.betti1();
    return RM_OK;
  });
}

rm_status rm_is_isomorphic(const rm_graph* a, const rm_graph* b, int use_labels, int* iso) {
  return guarded([&] {
    *iso = is_isomorphic(canonicalize(a->g), canonicalize(b->g), use_labels != 0) ? 1 : 0;
    return RM_OK;
  });
}

rm_status rm_linf(const rm_field* f, const rm_field* g, char** exact, double* value) {
  return guarded([&] {
    Rat v = linf_distance(f->f, g->f);
    if (exact) *exact = dup_string(rat_to_string(v));
    if (value) *value = rat_to_double(v);
    return RM_OK;
  });
}

rm_status rm_diagram_compute(const rm_graph* g, int use_oracle, rm_diagram** out) {
  return guarded([&] {
    ReebGraph c = canonicalize(g->g);
    *out = new rm_diagram{use_oracle ? extended_diagram_oracle(c) : extended_diagram(c)};
    return RM_OK;
  });
}

rm_status rm_diagram_load(const char* path, rm_diagram** out) {
  return guarded([&] {
    *out = new rm_diagram{parse_dgm_file(path)};
    return RM_OK;
  });
}

rm_status rm_diagram_save(const rm_diagram* d, const char* path) {
  return guarded([&] {
    std::ofstream o(path);
    if (!o) throw std::runtime_error(std::string("cannot open ") + path);
    serialize_dgm(d->d, o);
    return RM_OK;
  });
}

void rm_diagram_free(rm_diagram* d) { delete d; }

rm_status rm_diagram_equal(const rm_diagram* a, const rm_diagram* b, int* equal) {
  return guarded([&] {
    *equal = (a->d == b->d) ? 1 : 0;
    return RM_OK;
  });
}

rm_status rm_bottleneck(const rm_diagram* a, const rm_diagram* b, int graded, char** exact,
                        double* value) {
  return guarded([&] {
    Rat v = graded ? bottleneck_graded(a->d, b->d) : bottleneck_ungraded(a->d, b->d);
    if (exact) *exact = dup_string(rat_to_string(v));
    if (value) *value = rat_to_double(v);
    return RM_OK;
  });
}

rm_status rm_wasserstein(const rm_diagram* a, const rm_diagram* b, const char* q, int graded,
                         char** exact_total, double* value) {
  return guarded([&] {
    Rat qr = parse_or_throw(q, "q");
    auto r = wasserstein(a->d, b->d, qr, graded != 0);
    if (exact_total) *exact_total = dup_string(r.exact ? rat_to_string(r.total_q) : "");
    if (value) *value = r.value;
    return RM_OK;
  });
}

rm_status rm_smooth(const rm_graph* g, const char* eps, const char* tau_or_null,
                    rm_graph** out) {
  return guarded([&] {
    Rat e = parse_or_throw(eps, "eps");
    ReebGraph c = canonicalize(g->g);
    ReebGraph result;
    if (tau_or_null && *tau_or_null) {
      Rat t = parse_or_throw(tau_or_null, "tau");
      result = truncated_smooth(c, e, t);
    } else {
      result = smooth(c, e).graph;
    }
    *out = new rm_graph{canonicalize(result)};
    return RM_OK;
  });
}

rm_status rm_interleave(const rm_graph* a, const rm_graph* b, const char* m, const char* tol,
                        long budget, char** lo, char** hi, int* exact, int* infinite,
                        const char* cert_path) {
  return guarded([&] {
    Rat mr = parse_or_throw(m, "m");
    Rat tr = parse_or_throw(tol, "tol");
    SearchBudget bud;
    if (budget > 0) bud.map_limit = budget;
    InterleavingCertificate cert;
    Bracket br = truncated_interleaving_distance(canonicalize(a->g), canonicalize(b->g), mr,
                                                 tr, bud, &cert);
    emit_bracket(br, lo, hi, infinite);
    if (exact) *exact = br.exact ? 1 : 0;
    if (cert_path && !br.infinite && cert.grid.size() > 0) {
      std::ofstream o(cert_path);
      if (!o) throw std::runtime_error(std::string("cannot open ") + cert_path);
      serialize_ilv(cert, o);
    }
    if (br.budget_hit) return fail(RM_ERR_BUDGET, "interleaving search budget exhausted");
    return RM_OK;
  });
}

rm_status rm_fdd_bounds(const rm_graph* a, const rm_graph* b, const char* const* cert_paths,
                        int n_certs, const char* delta, const char* tol, long budget,
                        char** lo, char** hi, int* infinite) {
  return guarded([&] {
    Rat dr = parse_or_throw(delta, "delta");
    Rat tr = parse_or_throw(tol, "tol");
    std::vector<MapCertificate> certs;
    for (int i = 0; i < n_certs; ++i) certs.push_back(parse_cert_file(cert_paths[i]));
    SearchBudget bud;
    if (budget > 0) bud.map_limit = budget;
    auto r = fdd_bounds(canonicalize(a->g), canonicalize(b->g), certs, dr, tr, bud);
    emit_bracket(r.bracket, lo, hi, infinite);
    return RM_OK;
  });
}

rm_status rm_edit_search(const rm_graph* a, const rm_graph* b, long budget, char** lo,
                         char** hi, int* grid_optimal, const char* seq_path_or_null) {
  return guarded([&] {
    auto r = edit_search(canonicalize(a->g), canonicalize(b->g),
                         budget > 0 ? budget : default_budget_from_env());
    emit_bracket(r.bracket, lo, hi, nullptr);
    if (grid_optimal) *grid_optimal = r.grid_optimal ? 1 : 0;
    if (seq_path_or_null && r.best) {
      std::ofstream o(seq_path_or_null);
      if (!o) throw std::runtime_error(std::string("cannot open ") + seq_path_or_null);
      serialize_seq(*r.best, o);
    }
    return RM_OK;
  });
}

rm_status rm_zigzag_cost(const rm_graph* a, const rm_graph* b, const char* zz_path,
                         char** cost, double* value) {
  return guarded([&] {
    auto z = parse_zz_file(zz_path);
    validate_zigzag(z, a->g, b->g);
    Rat c = zigzag_cost(z);
    if (cost) *cost = dup_string(rat_to_string(c));
    if (value) *value = rat_to_double(c);
    return RM_OK;
  });
}

rm_status rm_universal_bounds(const rm_graph* a, const rm_graph* b,
                              const char* const* zz_paths, int n_zz, const char* tol,
                              long budget, char** lo, char** hi, int* infinite) {
  return guarded([&] {
    Rat tr = parse_or_throw(tol, "tol");
    std::vector<ZigzagCertificate> certs;
    for (int i = 0; i < n_zz; ++i) certs.push_back(parse_zz_file(zz_paths[i]));
    SearchBudget bud;
    if (budget > 0) bud.map_limit = budget;
    auto r = universal_bounds(canonicalize(a->g), canonicalize(b->g), certs, tr, bud);
    emit_bracket(r.bracket, lo, hi, infinite);
    return RM_OK;
  });
}

rm_status rm_validate_landscape(const char* manifest_path, const char* tol, long budget,
                                char** report, int* violations, int* indeterminate) {
  return guarded([&] {
    Rat tr = parse_or_throw(tol, "tol");
    Manifest m = parse_manifest_file(manifest_path);
    std::ostringstream os;
    int viol = 0, indet = 0;
    for (const auto& p : m.pairs) {
      SearchBudget bud;
      if (budget > 0) bud.map_limit = budget;
      auto r = validate_pair(p, tr, bud);
      os << render_report(r);
      viol += r.violations();
      indet += r.indeterminates();
    }
    if (report) *report = dup_string(os.str());
    if (violations) *violations = viol;
    if (indeterminate) *indeterminate = indet;
    return RM_OK;
  });
}

rm_status rm_compare_matrix(const char* manifest_path, const char* tol, long budget,
                            int threads, char** table) {
  return guarded([&] {
    Rat tr = parse_or_throw(tol, "tol");
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error(std::string("cannot open ") + manifest_path);
    std::vector<std::string> names;
    std::vector<ReebGraph> graphs;
    std::string line;
    namespace fs = std::filesystem;
    fs::path base = fs::path(manifest_path).parent_path();
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::string tag, path;
      ls >> tag >> path;
      if (tag != "graph") throw std::runtime_error("compare manifest: expected 'graph <path>'");
      fs::path q(path);
      if (!q.is_absolute()) q = base / q;
      names.push_back(path);
      graphs.push_back(canonicalize(parse_reeb_file(q.string())));
    }
    int n = static_cast<int>(graphs.size());
    struct Entry {
      Rat db, dB;
      Bracket di;
    };
    std::vector<Entry> results(static_cast<size_t>(n) * n);
    std::vector<std::pair<int, int>> jobs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) jobs.push_back({i, j});
    int nthreads = threads > 0 ? threads : 1;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t k = next.fetch_add(1);
        if (k >= jobs.size()) break;
        auto [i, j] = jobs[k];
        Diagram da = extended_diagram(graphs[i]), db2 = extended_diagram(graphs[j]);
        Entry e;
        e.db = bottleneck_ungraded(da, db2);
        e.dB = bottleneck_graded(da, db2);
        SearchBudget bud;
        if (budget > 0) bud.map_limit = budget;
        e.di = interleaving_distance(graphs[i], graphs[j], tr, bud);
        results[static_cast<size_t>(i) * n + j] = e;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    std::ostringstream os;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Entry& e = results[static_cast<size_t>(i) * n + j];
        os << names[i] << " " << names[j] << " d_b=" << rat_to_string(e.db)
           << " d_B=" << rat_to_string(e.dB) << " d_I=" << bracket_to_string(e.di) << "\n";
      }
    if (table) *table = dup_string(os.str());
    return RM_OK;
  });
}

rm_status rm_fixtures_emit(const char* dir, int* files_written) {
  return guarded([&] {
    int n = fixtures::emit(dir);
    if (files_written) *files_written = n;
    return RM_OK;
  });
}

}  // extern "C"
