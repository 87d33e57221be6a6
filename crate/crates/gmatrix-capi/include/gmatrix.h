/* C interface of the gmatrix Google-matrix analysis library.
 *
 * Maintained by hand alongside ../src/lib.rs; a library test checks that
 * every exported symbol is declared here.
 *
 * Conventions:
 *  - Fallible calls return GmStatus; gm_last_error() gives a thread-local
 *    message for the most recent failure on the calling thread.
 *  - Matrices are row-major n_r * n_r buffers; the COLUMN is the transition
 *    source, the row the target.
 *  - Handles are released exactly once with their _free function.
 */

#ifndef GMATRIX_H
#define GMATRIX_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum GmStatus {
  GM_OK = 0,
  GM_NULL_POINTER = 1,
  GM_INVALID_ARGUMENT = 2,
  GM_PARSE_ERROR = 3,
  GM_IO_ERROR = 4,
  GM_NON_CONVERGENCE = 5,
  GM_PANIC = 6,
} GmStatus;

typedef enum GmReducedComponent {
  GM_COMPONENT_FULL = 0,     /* G_R */
  GM_COMPONENT_DIRECT = 1,   /* direct transitions */
  GM_COMPONENT_RANK_ONE = 2, /* leading-mode rank-one part */
  GM_COMPONENT_HIDDEN = 3,   /* hidden-transition remainder */
} GmReducedComponent;

typedef struct GmGraphStats {
  uint64_t n;
  uint64_t edge_count;
  double density;     /* edge_count / (n * (n - 1)) */
  double mean_degree; /* edge_count / n */
  uint64_t dangling_count;
} GmGraphStats;

typedef struct GmSolverReport {
  uint64_t iterations;
  double residual; /* L1 change of the last iteration */
  bool converged;
} GmSolverReport;

/* Opaque handles. */
typedef struct GmGraph GmGraph;
typedef struct GmReduced GmReduced;

/* Library version as a static string. */
const char *gm_version(void);

/* Message of the most recent failure on this thread; valid until the next
 * failing call on the same thread. */
const char *gm_last_error(void);

/* Builds a graph from parallel src/dst id arrays of length n_edges.
 * Duplicate edges collapse, self-loops drop, ids must lie in [0, n). */
GmStatus gm_graph_build(uint64_t n, const uint32_t *src, const uint32_t *dst,
                        size_t n_edges, GmGraph **out);

/* Reads a `src<TAB>dst` edge-list file ('#' comments, LF or CRLF). The node
 * count covers every id seen. */
GmStatus gm_graph_read_edge_file(const char *path, GmGraph **out);

void gm_graph_free(GmGraph *graph);

uint64_t gm_graph_node_count(const GmGraph *graph);
uint64_t gm_graph_edge_count(const GmGraph *graph);

/* Requires n >= 2 (density is undefined otherwise). */
GmStatus gm_graph_stats(const GmGraph *graph, GmGraphStats *out);

/* PageRank / CheiRank by power iteration from the uniform start.
 * probabilities: n values (required). ranks: 1-based rank per node
 * (optional, may be NULL). report: solver outcome (optional). A run that
 * hits max_iter writes the partial result and returns GM_NON_CONVERGENCE. */
GmStatus gm_pagerank(const GmGraph *graph, double alpha, double tol,
                     uint64_t max_iter, double *probabilities, uint32_t *ranks,
                     GmSolverReport *report);
GmStatus gm_cheirank(const GmGraph *graph, double alpha, double tol,
                     uint64_t max_iter, double *probabilities, uint32_t *ranks,
                     GmSolverReport *report);

/* Reduced Google matrix over a selection of n_r distinct node ids (the id
 * order defines the matrix order). Requires 1 <= n_r < n. */
GmStatus gm_reduced_compute(const GmGraph *graph, const uint32_t *selection,
                            size_t n_r, double alpha, double tol,
                            uint64_t max_iter, GmReduced **out);

void gm_reduced_free(GmReduced *reduced);

uint64_t gm_reduced_size(const GmReduced *reduced);

/* Leading eigenvalue of the scatterer block (strictly below 1). */
double gm_reduced_lambda_c(const GmReduced *reduced);

/* Copies one component into a row-major n_r * n_r buffer. */
GmStatus gm_reduced_component(const GmReduced *reduced,
                              GmReducedComponent which, double *out);

/* Copies the normalized restriction of the global PageRank (n_r values). */
GmStatus gm_reduced_pagerank(const GmReduced *reduced, double *out);

/* Strongest purely hidden link per source. targets[j] = selection index of
 * the winner, or UINT32_MAX when every eligible weight is non-positive;
 * weights (optional) = the winning weight, or 0. */
GmStatus gm_reduced_strongest_hidden(const GmReduced *reduced,
                                     uint32_t *targets, double *weights);

size_t gm_reduced_ranked_hidden_count(const GmReduced *reduced);

/* Copies up to capacity ranked purely-hidden links (descending weight);
 * written (optional) receives the copied count. */
GmStatus gm_reduced_ranked_hidden(const GmReduced *reduced, uint32_t *sources,
                                  uint32_t *targets, double *weights,
                                  size_t capacity, size_t *written);

/* Kendall distance in [0, 1] between two rank assignments of length len
 * (len >= 2). Ties contribute via sign(0) = 0. */
GmStatus gm_kendall_distance(const uint32_t *r1, const uint32_t *r2,
                             size_t len, double *out);

/* Theta-score aggregation. ranks is row-major n_editions x n_entities; each
 * row must be a permutation of 1..=n_entities. theta[p] in [1/n_entities, 1]
 * receives the score of entity p; display_ranks (optional) the
 * competition-style rank. */
GmStatus gm_theta_scores(const uint32_t *ranks, size_t n_editions,
                         size_t n_entities, double *theta,
                         uint32_t *display_ranks);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GMATRIX_H */
