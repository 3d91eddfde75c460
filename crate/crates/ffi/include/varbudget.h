#ifndef VARBUDGET_H
#define VARBUDGET_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum VbStatus {
  VB_STATUS_OK = 0,
  VB_STATUS_INVALID_ARGUMENT = 1,
  VB_STATUS_BUDGET_TOO_LARGE = 2,
  VB_STATUS_NUMERIC_FAULT = 3,
  VB_STATUS_UNDEFINED_LOSS = 4,
  VB_STATUS_PARSE = 5,
  VB_STATUS_IO = 6,
  VB_STATUS_NULL_POINTER = 7,
  VB_STATUS_OUT_OF_RANGE = 8,
  VB_STATUS_PANIC = 9,
} VbStatus;

/**
 * Aggregated results of an experiment.
 */
typedef struct VbExperiment VbExperiment;

/**
 * A cost sequence.
 */
typedef struct VbSequence VbSequence;

/**
 * Summary of one horizon of an experiment.
 */
typedef struct VbCell {
  size_t horizon;
  size_t completed;
  size_t faulted;
  double mean_regret;
  double stderr_regret;
  /**
   * NaN when the loss is undefined.
   */
  double mean_loss_pct;
} VbCell;

typedef struct VbRateFit {
  double alpha;
  double c;
  double r_squared;
} VbRateFit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *vb_last_error(void);

/**
 * Library version as a static string.
 */
const char *vb_version(void);

/**
 * Samples one environment (`shock`, `decay`, `linear`, `adv-convex`,
 * `adv-strong`, `ogd-failure`, `oracle-gap`). `settings` is an optional
 * `key=value` block (`budget`, `sigma`, `decay-rate`, `step-constant`).
 */
enum VbStatus vb_sequence_generate(const char *pattern,
                                   size_t horizon,
                                   uint64_t seed,
                                   const char *settings,
                                   struct VbSequence **out_seq);

/**
 * Loads a sequence file.
 */
enum VbStatus vb_sequence_load(const char *path, struct VbSequence **out_seq);

/**
 * Writes a sequence file.
 */
enum VbStatus vb_sequence_save(const struct VbSequence *seq, const char *path);

/**
 * Number of epochs; 0 for a null handle.
 */
size_t vb_sequence_horizon(const struct VbSequence *seq);

/**
 * Action-space dimension; 0 for a null handle.
 */
size_t vb_sequence_dim(const struct VbSequence *seq);

/**
 * Declared variation budget.
 */
enum VbStatus vb_sequence_budget(const struct VbSequence *seq, double *out_budget);

/**
 * Noiseless cost of 1-based epoch `t` at `x` (length `dim`).
 */
enum VbStatus vb_sequence_eval(const struct VbSequence *seq,
                               size_t t,
                               const double *x,
                               size_t dim,
                               double *out_value);

/**
 * Total cost of the dynamic oracle.
 */
enum VbStatus vb_dynamic_oracle_total(const struct VbSequence *seq, double *out_total);

/**
 * Best fixed action over 1-based epochs `start..=end`. `out_x` may be null;
 * otherwise it must hold `dim` values.
 */
enum VbStatus vb_static_oracle(const struct VbSequence *seq,
                               size_t start,
                               size_t end,
                               double *out_x,
                               size_t dim,
                               double *out_total);

void vb_sequence_free(struct VbSequence *seq);

/**
 * Runs an experiment described by a `key=value` block with the CLI keys.
 * With `sweep` the default horizon grid applies when none is given.
 */
enum VbStatus vb_experiment_run(const char *settings,
                                bool sweep,
                                struct VbExperiment **out_experiment);

/**
 * Number of horizons; 0 for a null handle.
 */
size_t vb_experiment_cell_count(const struct VbExperiment *exp);

enum VbStatus vb_experiment_cell(const struct VbExperiment *exp,
                                 size_t index,
                                 struct VbCell *out_cell);

/**
 * Rate fit over the grid; `VB_STATUS_OUT_OF_RANGE` when the grid had
 * fewer than three horizons.
 */
enum VbStatus vb_experiment_fit(const struct VbExperiment *exp, struct VbRateFit *out_fit);

/**
 * Writes the result CSV.
 */
enum VbStatus vb_experiment_write_csv(const struct VbExperiment *exp, const char *path);

void vb_experiment_free(struct VbExperiment *exp);

/**
 * Fits `regret = c T^alpha` to `n` points.
 */
enum VbStatus vb_fit_rate(const double *horizons,
                          const double *regrets,
                          size_t n,
                          struct VbRateFit *out_fit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VARBUDGET_H */
