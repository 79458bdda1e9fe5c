/* Swarm-based simulated annealing: C interface.
 *
 * All objects are opaque handles created by ssa_*_create / _run / _parse
 * functions and released with the matching _free.  Every fallible call
 * returns an ssa_status; on failure ssa_last_error() returns a message for
 * the calling thread, valid until that thread's next failing call.
 */
#ifndef SSA_SSA_H_
#define SSA_SSA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSA_API __declspec(dllexport)
#else
#define SSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssa_status {
  SSA_OK = 0,
  SSA_ERR_INVALID_ARGUMENT = 1,
  SSA_ERR_SCHEMA = 2,
  SSA_ERR_SEMANTIC = 3,
  SSA_ERR_INVALID_DIMENSION = 4,
  SSA_ERR_EMPTY_SWARM = 5,
  SSA_ERR_STEP_SIZE_TOO_LARGE = 6,
  SSA_ERR_NON_FINITE_POSITION = 7,
  SSA_ERR_MASS_UNDERFLOW = 8,
  SSA_ERR_EMPTY_INPUT = 9,
  SSA_ERR_MISMATCHED_GRIDS = 10,
  SSA_ERR_DUPLICATE_CELL = 11,
  SSA_ERR_DOMAIN = 12,
  SSA_ERR_DIMENSION_UNSUPPORTED = 13,
  SSA_ERR_IO = 14,
  SSA_ERR_UNKNOWN_OBJECTIVE = 15,
  SSA_ERR_INTERNAL = 16
} ssa_status;

SSA_API const char* ssa_status_name(ssa_status status);
SSA_API const char* ssa_last_error(void);
SSA_API const char* ssa_build_describe(void);

/* ---- run configuration -------------------------------------------------- */

typedef struct ssa_config ssa_config;

SSA_API ssa_status ssa_config_parse(const char* text, ssa_config** out);
SSA_API ssa_status ssa_config_load(const char* path, ssa_config** out);
SSA_API void ssa_config_free(ssa_config* cfg);
SSA_API ssa_status ssa_config_set_seed(ssa_config* cfg, uint64_t seed);
SSA_API uint64_t ssa_config_seed(const ssa_config* cfg);
SSA_API size_t ssa_config_trials(const ssa_config* cfg);
/* Canonical JSON.  Writes at most `cap` bytes including the terminator and
 * stores the full length (without terminator) in *len. */
SSA_API ssa_status ssa_config_serialize(const ssa_config* cfg, char* buf,
                                        size_t cap, size_t* len);
SSA_API ssa_status ssa_config_sweep_grid(const ssa_config* cfg, size_t* ns,
                                         double* betas, size_t cap,
                                         size_t* n_count, size_t* beta_count);

/* ---- objectives --------------------------------------------------------- */

typedef struct ssa_objective ssa_objective;

SSA_API size_t ssa_catalog_size(void);
SSA_API ssa_status ssa_catalog_get(size_t index, ssa_objective** out);
/* dim is ignored (must be 2) for the fixed two-dimensional objectives. */
SSA_API ssa_status ssa_objective_create(const char* name, size_t dim,
                                        ssa_objective** out);
SSA_API void ssa_objective_free(ssa_objective* f);
SSA_API const char* ssa_objective_name(const ssa_objective* f);
SSA_API size_t ssa_objective_dim(const ssa_objective* f);
SSA_API double ssa_objective_global_min_value(const ssa_objective* f);
SSA_API ssa_status ssa_objective_eval(const ssa_objective* f, const double* x,
                                      size_t dim, double* value);
SSA_API ssa_status ssa_objective_gradient(const ssa_objective* f,
                                          const double* x, size_t dim,
                                          double* grad);

typedef struct ssa_gradient_check_row {
  char name[32];
  size_t dim;
  size_t points;
  size_t skipped;
  double max_rel_error;
  int passed;
} ssa_gradient_check_row;

/* Runs the finite-difference gradient check over the whole catalog. */
SSA_API ssa_status ssa_check_gradients(uint64_t seed, size_t points,
                                       ssa_gradient_check_row* rows,
                                       size_t cap, size_t* count);

/* ---- trial batches ------------------------------------------------------ */

typedef struct ssa_trials ssa_trials;

typedef struct ssa_trial_summary {
  uint64_t trial;
  int aborted;
  uint64_t abort_step;
  ssa_status abort_cause;
  uint64_t steps_completed;
  double final_fbar;
  double final_best_value;
  double tail_mean_value;
  size_t n_points;
} ssa_trial_summary;

/* workers = 0 uses all hardware threads; results never depend on it. */
SSA_API ssa_status ssa_trials_run(const ssa_config* cfg, size_t n_trials,
                                  size_t workers, ssa_trials** out);
SSA_API void ssa_trials_free(ssa_trials* t);
SSA_API size_t ssa_trials_count(const ssa_trials* t);
SSA_API ssa_status ssa_trials_summary(const ssa_trials* t, size_t k,
                                      ssa_trial_summary* out);
SSA_API ssa_status ssa_trials_series(const ssa_trials* t, size_t k,
                                     double* times, double* fbar, size_t cap);
SSA_API ssa_status ssa_trials_best_point(const ssa_trials* t, size_t k,
                                         double* x, size_t dim);
SSA_API ssa_status ssa_trials_success_rate(const ssa_trials* t,
                                           double epsilon_succ, double* rate,
                                           double* stderr_out);
SSA_API ssa_status ssa_trials_write_aggregate_csv(const ssa_trials* t,
                                                  const char* path);
SSA_API ssa_status ssa_trials_write_trial_csv(const ssa_trials* t, size_t k,
                                              const char* path);
SSA_API ssa_status ssa_trials_write_manifest(const ssa_trials* t,
                                             const char* path,
                                             double wall_seconds);

/* ---- parameter sweeps --------------------------------------------------- */

typedef struct ssa_sweep ssa_sweep;

typedef struct ssa_sweep_cell {
  size_t n_agents;
  double beta;
  double final_mean;
  double final_q1;
  double final_q3;
  size_t n_trials;
  size_t n_aborted;
} ssa_sweep_cell;

SSA_API ssa_status ssa_sweep_run(const ssa_config* cfg, const size_t* ns,
                                 size_t n_count, const double* betas,
                                 size_t beta_count, size_t n_trials,
                                 size_t workers, ssa_sweep** out);
SSA_API void ssa_sweep_free(ssa_sweep* s);
SSA_API size_t ssa_sweep_cell_count(const ssa_sweep* s);
SSA_API ssa_status ssa_sweep_cell_get(const ssa_sweep* s, size_t index,
                                      ssa_sweep_cell* out);
SSA_API ssa_status ssa_sweep_write_summary_csv(const ssa_sweep* s,
                                               const char* path);
/* One aggregate CSV per cell: <dir>/cell_N<N>_beta<beta>.csv */
SSA_API ssa_status ssa_sweep_write_cell_csvs(const ssa_sweep* s,
                                             const char* dir);

/* ---- baseline diagnostics ----------------------------------------------- */

typedef struct ssa_gap_report {
  double time_average;   /* mean over trials of the tail average of F */
  double oracle;         /* E[F] under exp(-F) on the objective's box  */
  double relative_error; /* |time_average - oracle| / |oracle|         */
  double global_min_value;
  size_t n_trials;
  size_t n_aborted;
} ssa_gap_report;

/* Runs the configuration in Langevin mode and compares its long-run
 * average objective with the quadrature oracle (d <= 2). */
SSA_API ssa_status ssa_baseline_gap(const ssa_config* cfg, size_t n_trials,
                                    size_t workers, ssa_gap_report* out);

SSA_API ssa_status ssa_success_rate_bound(double p_basin, size_t n_agents,
                                          double* out);

#ifdef __cplusplus
}
#endif

#endif /* SSA_SSA_H_ */
