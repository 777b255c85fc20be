/* reebmet: Reeb graph construction and comparison measures.
 *
 * C interface over the core library: opaque handles, status codes, and
 * string-rendered exact rationals ("p/q" or integer). Strings returned
 * through char** are heap-allocated; release them with rm_string_free.
 * All functions are thread-safe for concurrent use on distinct handles.
 */
#ifndef REEBMET_H
#define REEBMET_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rm_graph rm_graph;
typedef struct rm_field rm_field;
typedef struct rm_diagram rm_diagram;

typedef enum {
  RM_OK = 0,
  RM_ERR_PARSE = 2,        /* malformed input file or number */
  RM_ERR_PRECONDITION = 3, /* operation preconditions violated */
  RM_ERR_BUDGET = 4,       /* search budget exhausted */
  RM_ERR_IO = 5,
  RM_ERR_INTERNAL = 6
} rm_status;

/* Message for the most recent failure on this thread. */
const char* rm_last_error(void);
void rm_string_free(char* s);

/* ---- scalar fields and graphs ---- */
rm_status rm_field_load(const char* path, rm_field** out);
rm_status rm_field_save(const rm_field* f, const char* path);
void rm_field_free(rm_field* f);

rm_status rm_graph_load(const char* path, rm_graph** out);
rm_status rm_graph_save(const rm_graph* g, const char* path);
void rm_graph_free(rm_graph* g);

/* Reeb graph of a PL scalar field; allow_ties enables the symbolic
 * perturbation fallback for repeated vertex values. */
rm_status rm_build_reeb(const rm_field* f, int allow_ties, rm_graph** out);
rm_status rm_canonicalize(const rm_graph* g, rm_graph** out);
rm_status rm_graph_info(const rm_graph* g, int* vertices, int* edges, int* components,
                        int* betti1);
rm_status rm_is_isomorphic(const rm_graph* a, const rm_graph* b, int use_labels, int* iso);
rm_status rm_linf(const rm_field* f, const rm_field* g, char** exact, double* value);

/* ---- persistence ---- */
rm_status rm_diagram_compute(const rm_graph* g, int use_oracle, rm_diagram** out);
rm_status rm_diagram_load(const char* path, rm_diagram** out);
rm_status rm_diagram_save(const rm_diagram* d, const char* path);
void rm_diagram_free(rm_diagram* d);
rm_status rm_diagram_equal(const rm_diagram* a, const rm_diagram* b, int* equal);

/* ---- diagram metrics ---- */
rm_status rm_bottleneck(const rm_diagram* a, const rm_diagram* b, int graded, char** exact,
                        double* value);
/* q parsed as a rational; non-integral q is evaluated in floating point,
 * in which case *exact_total is the empty string. */
rm_status rm_wasserstein(const rm_diagram* a, const rm_diagram* b, const char* q, int graded,
                         char** exact_total, double* value);

/* ---- smoothing ---- */
rm_status rm_smooth(const rm_graph* g, const char* eps, const char* tau_or_null,
                    rm_graph** out);

/* ---- interleaving ---- */
/* m = "0" for the plain distance; brackets come back as exact strings.
 * infinite = component-count mismatch. cert_path may be NULL. */
rm_status rm_interleave(const rm_graph* a, const rm_graph* b, const char* m, const char* tol,
                        long budget, char** lo, char** hi, int* exact, int* infinite,
                        const char* cert_path);

/* ---- functional distortion ---- */
rm_status rm_fdd_bounds(const rm_graph* a, const rm_graph* b, const char* const* cert_paths,
                        int n_certs, const char* delta, const char* tol, long budget,
                        char** lo, char** hi, int* infinite);

/* ---- edit distances ---- */
rm_status rm_edit_search(const rm_graph* a, const rm_graph* b, long budget, char** lo,
                         char** hi, int* grid_optimal, const char* seq_path_or_null);
rm_status rm_zigzag_cost(const rm_graph* a, const rm_graph* b, const char* zz_path,
                         char** cost, double* value);
rm_status rm_universal_bounds(const rm_graph* a, const rm_graph* b,
                              const char* const* zz_paths, int n_zz, const char* tol,
                              long budget, char** lo, char** hi, int* infinite);

/* ---- property runs and tooling ---- */
rm_status rm_validate_landscape(const char* manifest_path, const char* tol, long budget,
                                char** report, int* violations, int* indeterminate);
rm_status rm_compare_matrix(const char* manifest_path, const char* tol, long budget,
                            int threads, char** table);
rm_status rm_fixtures_emit(const char* dir, int* files_written);

#ifdef __cplusplus
}
#endif

#endif /* REEBMET_H */
