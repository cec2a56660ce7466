/* kronlap — separable Laplacians on product grids.
 *
 * C interface to the kronlap core. Problems are opaque handles built from a
 * config (see README for the grammar). Fields are caller-owned arrays of
 * 2*total doubles, interleaved re,im, in row-major grid order with the last
 * factor fastest-varying. Multi-indices are 0-based.
 *
 * Every call returns KRONLAP_OK or an error code; kronlap_last_error() gives
 * a message for the most recent failure on the calling thread.
 */
#ifndef KRONLAP_H
#define KRONLAP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kronlap_problem_s kronlap_problem;

typedef enum kronlap_status {
  KRONLAP_OK = 0,
  KRONLAP_ERR_ARGUMENT = 1, /* bad argument or size mismatch */
  KRONLAP_ERR_CONFIG = 2,   /* config text rejected */
  KRONLAP_ERR_CAP = 3,      /* size cap exceeded */
  KRONLAP_ERR_SINGULAR = 4, /* right-hand side hits a kernel mode */
  KRONLAP_ERR_EIGEN = 5,    /* factor eigensolver failure */
  KRONLAP_ERR_IO = 6,       /* file I/O */
  KRONLAP_ERR_INTERNAL = 7
} kronlap_status;

const char* kronlap_status_string(kronlap_status status);
const char* kronlap_last_error(void);

/* ---- problem lifecycle -------------------------------------------------- */

kronlap_status kronlap_problem_from_string(const char* text,
                                           kronlap_problem** out);
kronlap_status kronlap_problem_from_file(const char* path,
                                         kronlap_problem** out);
/* New problem with every factor's point count multiplied by `scale`. */
kronlap_status kronlap_problem_refine(const kronlap_problem* problem,
                                      int32_t scale, kronlap_problem** out);
void kronlap_problem_free(kronlap_problem* problem);

int32_t kronlap_problem_factor_count(const kronlap_problem* problem);
int64_t kronlap_problem_total_points(const kronlap_problem* problem);
int64_t kronlap_problem_factor_points(const kronlap_problem* problem,
                                      int32_t factor);
double kronlap_problem_mesh_width(const kronlap_problem* problem,
                                  int32_t factor);
double kronlap_problem_shift(const kronlap_problem* problem);

/* ---- operator actions --------------------------------------------------- */

/* out = (S + sigma) in, matrix-free. */
kronlap_status kronlap_apply(kronlap_problem* problem, const double* in,
                             double* out);
/* (S + sigma) out = rhs by fast diagonalization. zero_kernel_modes != 0
 * projects kernel modes away instead of failing. */
kronlap_status kronlap_solve(kronlap_problem* problem, const double* rhs,
                             int32_t zero_kernel_modes, double* out);
/* out = exp(-t (S + sigma)) in; t = 0 copies in. */
kronlap_status kronlap_heat(kronlap_problem* problem, double t,
                            const double* in, double* out);

/* k smallest eigenvalues ascending (ties by lexicographic multi-index).
 * values: k doubles; indices: k * factor_count 0-based entries (may be NULL).
 */
kronlap_status kronlap_spectrum(kronlap_problem* problem, int64_t count,
                                double* values, int64_t* indices);
/* Normalized eigen-tensor for one 0-based multi-index. */
kronlap_status kronlap_eigenfunction(kronlap_problem* problem,
                                     const int64_t* multi_index, double* out);
/* 0-based index of the smallest factor eigenvalue clear of the kernel. */
kronlap_status kronlap_lowest_nontrivial_index(kronlap_problem* problem,
                                               int32_t factor, int64_t* index);

/* ---- quadrature and identities ------------------------------------------ */

kronlap_status kronlap_inner(kronlap_problem* problem, const double* f,
                             const double* g, double* re, double* im);
/* Dirichlet form value sum_k <D_k f, D_k g>. */
kronlap_status kronlap_form_value(kronlap_problem* problem, const double* f,
                                  const double* g, double* re, double* im);
/* Discrete H2 seminorm sum_{|alpha|=2} (1/alpha!) <D^a f, D^a f>. */
kronlap_status kronlap_h2_seminorm(kronlap_problem* problem, const double* f,
                                   double* value);

/* Deterministic standard complex normal field for a seed. */
kronlap_status kronlap_random_field(kronlap_problem* problem, uint64_t seed,
                                    double* out);

/* Sampled product of per-factor continuum reference eigenfunctions, with its
 * eigenvalue sum, analytic squared L2 norm and analytic H2 seminorm. Any
 * output pointer may be NULL. */
kronlap_status kronlap_reference_field(kronlap_problem* problem, double* field,
                                       double* eigenvalue, double* norm2,
                                       double* h2_value);

/* ---- verification ------------------------------------------------------- */

#define KRONLAP_VERIFY_MAX_CHECKS 8
#define KRONLAP_VERIFY_NAME_LEN 32

typedef struct kronlap_verify_check {
  char name[KRONLAP_VERIFY_NAME_LEN];
  int64_t trials;
  double max_err;
  double tolerance;
  int32_t passed;
} kronlap_verify_check;

typedef struct kronlap_verify_report {
  int32_t passed;
  int32_t check_count;
  kronlap_verify_check checks[KRONLAP_VERIFY_MAX_CHECKS];
} kronlap_verify_report;

/* Runs the operator identities with `trials` random field pairs at base
 * tolerance `tol` (the second-order identity runs at 10*tol). */
kronlap_status kronlap_verify(kronlap_problem* problem, double tol,
                              uint64_t seed, int32_t trials,
                              kronlap_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* KRONLAP_H */
