#pragma once

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Stable C surface over the point set toolkit. Every function that can fail
 * returns an ld status code; the per-thread message behind the most recent
 * failure is available from ld_last_error(). Handles are freed exactly once
 * with the matching *_free call. */

enum {
  LD_OK = 0,
  LD_ERR_INVALID_ARGUMENT = 1,
  LD_ERR_IO = 2,
  LD_ERR_UNSUPPORTED_DIMENSION = 3,
  LD_ERR_SOLVER_FAILURE = 4,
  LD_ERR_REGRESSION = 5,
  LD_ERR_INTERNAL = 6
};

typedef struct ld_pointset ld_pointset;
typedef struct ld_result ld_result;

/* Static name of a status code. */
const char* ld_strerror(int code);

/* Message recorded by the most recent failing call on this thread. */
const char* ld_last_error(void);

typedef struct ld_config {
  double time_limit;            /* seconds per optimize call */
  int max_outer_iterations;
  double improvement_tolerance;
  int restarts;
  double perturbation_scale;
  uint64_t seed;
  double epsilon;               /* minimum coordinate separation */
  int jobs;                     /* batch workers; 0 = hardware default */
  int fast;                     /* nonzero selects the 2 s batch profile */
} ld_config;

ld_config ld_config_default(void);

typedef struct ld_genspec {
  const char* family;  /* fibonacci | kronecker | vdc | sobol | random */
  int n;
  int dim;             /* 2 or 3; families without a native 3D form are lifted */
  long long shift;     /* fibonacci, vdc */
  long long skip;      /* sobol */
  long long p, q;      /* kronecker p/q when use_rational is nonzero */
  double r;            /* kronecker real generator otherwise */
  int use_rational;
  uint64_t seed;       /* random */
} ld_genspec;

ld_genspec ld_genspec_default(void);

int ld_generate(const ld_genspec* spec, ld_pointset** out);
int ld_pointset_read(const char* path, ld_pointset** out);
int ld_pointset_write(const ld_pointset* ps, const char* path);
int ld_pointset_n(const ld_pointset* ps);
int ld_pointset_dim(const ld_pointset* ps);
int ld_pointset_coord(const ld_pointset* ps, int i, int k, double* out);
void ld_pointset_free(ld_pointset* ps);

int ld_star_discrepancy(const ld_pointset* ps, double* value);

/* Writes the local discrepancy map as CSV and reports its maximum (2D only). */
int ld_heatmap_csv(const ld_pointset* ps, const char* path, double* max_out);

/* Optimizes coordinates under the point order extracted from ps; the initial
 * placement reuses the coordinates of ps. */
int ld_optimize(const ld_pointset* ps, const ld_config* cfg, ld_result** out);

double ld_result_f(const ld_result* res);
double ld_result_exact(const ld_result* res);
const char* ld_result_status(const ld_result* res);
int ld_result_iterations(const ld_result* res);
int ld_result_restarts(const ld_result* res);
double ld_result_seconds(const ld_result* res);
int ld_result_write_json(const ld_result* res, const char* path);

/* Optimized placements assembled back into a point set handle. */
int ld_result_pointset(const ld_result* res, ld_pointset** out);
void ld_result_free(ld_result* res);

typedef struct ld_batch_summary {
  int count;
  double best_f;
  double median_f;
  char best_param[64];
} ld_batch_summary;

/* Batch drivers. Output paths may be NULL to skip the corresponding file;
 * jsonl records append, CSV summaries overwrite. */
int ld_shift_scan(int n, long long shift_lo, long long shift_hi,
                  const ld_config* cfg, const char* jsonl_path,
                  const char* csv_path, ld_batch_summary* out);
int ld_kronecker_sweep(int n, const ld_config* cfg, const char* jsonl_path,
                       const char* csv_path, const char* hist_path,
                       int hist_bins, ld_batch_summary* out);
int ld_random_batch(int n, int count, uint64_t seed, const ld_config* cfg,
                    const char* jsonl_path, const char* csv_path,
                    const char* hist_path, int hist_bins,
                    ld_batch_summary* out);

typedef struct ld_regress_summary {
  int rows;
  int passed;
  int missing;
  int hard_failures;
} ld_regress_summary;

/* Re-derives every builtin reference row and compares. Returns LD_OK even
 * when rows fail; inspect hard_failures. include_optimized nonzero also runs
 * the optimizer-quality rows, which cost minutes at the default budget. */
int ld_regress(const ld_config* cfg, double slack, int include_optimized,
               const char* csv_path, ld_regress_summary* out);

int ld_curves_csv(const char* path, int n_max);

#ifdef __cplusplus
}
#endif
