/* latticeqid — infinite divisibility analysis of lattice probability
 * distributions.
 *
 * C interface to the analysis core. All functions returning lqid_status
 * leave their outputs untouched on failure; a human-readable description of
 * the last failure on the calling thread is available from lqid_last_error().
 * Strings produced by the library are heap-allocated and must be released
 * with lqid_string_free(); handles with their matching *_free function.
 */

#ifndef LATTICEQID_H
#define LATTICEQID_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lqid_status {
  LQID_OK = 0,
  LQID_ERR_INVALID_ARGUMENT = 1,
  LQID_ERR_PARSE = 2,
  LQID_ERR_NOT_NORMALIZED = 3,
  LQID_ERR_DIMENSION_MISMATCH = 4,
  LQID_ERR_IO = 5,
  LQID_ERR_INCONCLUSIVE = 6,     /* certification undecided within budget */
  LQID_ERR_BUDGET_EXCEEDED = 7,  /* grid point budget exhausted */
  LQID_ERR_NUMERICAL = 8,        /* internal consistency check violated */
  LQID_ERR_NOT_QUASI = 9,        /* operation requires a zero-free input */
  LQID_ERR_INTERNAL = 10
} lqid_status;

typedef enum lqid_verdict_kind {
  LQID_VERDICT_INFINITELY_DIVISIBLE = 0,
  LQID_VERDICT_QUASI_ONLY = 1,
  LQID_VERDICT_NOT_QUASI = 2
} lqid_verdict_kind;

typedef struct lqid_pmf lqid_pmf;
typedef struct lqid_verdict lqid_verdict;
typedef struct lqid_cw_report lqid_cw_report;
typedef struct lqid_factorization lqid_factorization;

typedef struct lqid_options {
  double tol;               /* analysis tolerance, in (0, 1e-6]; default 1e-10 */
  uint64_t max_grid_points; /* cap on total torus grid points M^d; default 2^20 */
  int direction_bound;      /* sup-norm cap B for Cramer-Wold directions; default 4 */
  int signed_directions;    /* nonzero: directions from {-B..B}^d instead of N_0^d */
} lqid_options;

lqid_options lqid_options_default(void);

const char* lqid_version(void);
const char* lqid_status_name(lqid_status s);
const char* lqid_last_error(void);
void lqid_string_free(char* s);

/* --- probability mass functions ------------------------------------- */

/* JSON layout: {"dim": d, "atoms": [{"n": [int,...], "p": mass}, ...]},
 * atoms sorted lexicographically by "n"; unknown keys are ignored. */
lqid_status lqid_pmf_parse_json(const char* json_text, lqid_pmf** out);
lqid_status lqid_pmf_read_file(const char* path, lqid_pmf** out);
lqid_status lqid_pmf_to_json(const lqid_pmf* pmf, char** json_out);
int lqid_pmf_dim(const lqid_pmf* pmf);
size_t lqid_pmf_atom_count(const lqid_pmf* pmf);
void lqid_pmf_free(lqid_pmf* pmf);

/* Independent product (dimensions concatenate). */
lqid_status lqid_pmf_product(const lqid_pmf* a, const lqid_pmf* b, lqid_pmf** out);
/* Image under n -> A n + v for an integer d x d matrix A (row-major) with
 * nonzero determinant. */
lqid_status lqid_pmf_affine(const lqid_pmf* pmf, const int64_t* matrix_row_major,
                            const int64_t* shift, lqid_pmf** out);

/* --- analysis -------------------------------------------------------- */

/* Quasi-Levy triplet extraction and three-way classification. opts may be
 * NULL for defaults. */
lqid_status lqid_analyze(const lqid_pmf* pmf, const lqid_options* opts, lqid_verdict** out);
lqid_verdict_kind lqid_verdict_get_kind(const lqid_verdict* v);
lqid_status lqid_verdict_to_json(const lqid_verdict* v, char** json_out);
lqid_status lqid_verdict_render_text(const lqid_verdict* v, char** text_out);
void lqid_verdict_free(lqid_verdict* v);

/* Cramer-Wold projection harness. */
lqid_status lqid_cw_test(const lqid_pmf* pmf, const lqid_options* opts, lqid_cw_report** out);
int lqid_cw_report_consistent(const lqid_cw_report* r);
lqid_status lqid_cw_report_to_json(const lqid_cw_report* r, char** json_out);
lqid_status lqid_cw_report_render_text(const lqid_cw_report* r, char** text_out);
void lqid_cw_report_free(lqid_cw_report* r);

/* Compound Poisson quotient factorization; fails with LQID_ERR_NOT_QUASI
 * when the characteristic function has a zero. */
lqid_status lqid_factorize(const lqid_pmf* pmf, const lqid_options* opts,
                           lqid_factorization** out);
/* which = 1 or 2 selects the factor. */
lqid_status lqid_factorization_factor_json(const lqid_factorization* f, int which,
                                           char** json_out);
lqid_status lqid_factorization_to_json(const lqid_factorization* f, char** json_out);
lqid_status lqid_factorization_render_text(const lqid_factorization* f, char** text_out);
void lqid_factorization_free(lqid_factorization* f);

/* --- fixture generators ---------------------------------------------- */

/* Each emits pmf JSON with a "meta" object recording the parameters and any
 * truncation. tail must lie in (0, 1e-6]. */
lqid_status lqid_generate_poisson(double lambda, double tail, char** json_out);
lqid_status lqid_generate_geometric(double ratio, double tail, char** json_out);
lqid_status lqid_generate_bernoulli(double p, char** json_out);
lqid_status lqid_generate_dirac(const int64_t* point, int dim, char** json_out);
lqid_status lqid_generate_random(int dim, int radius, int atoms, double origin_mass,
                                 uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* LATTICEQID_H */
