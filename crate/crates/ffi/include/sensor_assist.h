#ifndef SENSOR_ASSIST_H
#define SENSOR_ASSIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SaStatus {
  SA_STATUS_OK = 0,
  SA_STATUS_NULL_POINTER = 1,
  SA_STATUS_INVALID_ARGUMENT = 2,
  SA_STATUS_DOMAIN_ERROR = 3,
  SA_STATUS_PANIC = 4,
} SaStatus;

typedef enum SaStandardOutcome {
  SA_STANDARD_OUTCOME_C = 0,
  SA_STANDARD_OUTCOME_CC = 1,
  SA_STANDARD_OUTCOME_F = 2,
} SaStandardOutcome;

typedef enum SaAssistedOutcome {
  SA_ASSISTED_OUTCOME_ACCEPT_C = 0,
  SA_ASSISTED_OUTCOME_ACCEPT_CC = 1,
  SA_ASSISTED_OUTCOME_ACCEPT_F = 2,
  SA_ASSISTED_OUTCOME_REJECT_PT = 3,
  SA_ASSISTED_OUTCOME_REJECT_S = 4,
} SaAssistedOutcome;

/**
 * Opaque benchmark-report handle.
 */
typedef struct SaDjReport SaDjReport;

/**
 * Opaque truth-table handle.
 */
typedef struct SaTruthTable SaTruthTable;

/**
 * The seven disjoint (standard, assisted) outcome fractions.
 */
typedef struct SaFractions {
  double f_c_c;
  double f_cc_cc;
  double f_f_f;
  double f_cc_rpt;
  double f_f_rpt;
  double f_cc_rs;
  double f_f_rs;
} SaFractions;

/**
 * Headline metrics at one error point. Metrics that are undefined because
 * every calculation was rejected are NaN.
 */
typedef struct SaMetrics {
  double effective_correct_standard;
  double effective_correct_assisted;
  double effective_fault_standard;
  double effective_fault_assisted;
  double rejected;
} SaMetrics;

/**
 * One truth-table row. Masks use bit `i` for data qubit `i`.
 */
typedef struct SaCaseRecord {
  uint8_t env_mask;
  uint8_t ent_mask;
  uint8_t resultant;
  uint8_t syndrome;
  uint32_t o_exponent;
  uint32_t p_exponent;
  enum SaStandardOutcome standard;
  enum SaAssistedOutcome assisted;
} SaCaseRecord;

typedef struct SaQecMcResult {
  uint64_t shots;
  /**
   * Counts in the field order of [`SaFractions`].
   */
  uint64_t counts[7];
  struct SaFractions empirical;
  struct SaFractions analytic;
  double max_abs_z;
  uint64_t audited;
  uint64_t audit_mismatches;
} SaQecMcResult;

typedef struct SaDjConfig {
  uint64_t shots;
  uint32_t trials;
  double gate_error_prob;
  double detectable_fraction;
  bool veto_enabled;
  uint64_t seed;
} SaDjConfig;

/**
 * Totals over all trials of a benchmark run. `correct_fraction` is NaN when
 * every shot was vetoed.
 */
typedef struct SaDjSummary {
  uint64_t total_shots;
  uint64_t accepted;
  uint64_t rejected;
  double correct_fraction;
  double rejected_fraction;
  size_t num_states;
  size_t num_trials;
} SaDjSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *sa_last_error_message(void);

/**
 * Environmental probability `o` from the total `phat` and entangling `p`.
 *
 * # Safety
 * `out_o` must be null or valid for writes.
 */
enum SaStatus sa_solve_environmental(double phat, double p, double *out_o);

/**
 * Closed-form outcome fractions for per-qubit probabilities `o` and `p`.
 *
 * # Safety
 * `out_fractions` must be null or valid for writes.
 */
enum SaStatus sa_outcome_fractions(double o, double p, struct SaFractions *out_fractions);

/**
 * Effective correct and fault rates for both codes.
 *
 * # Safety
 * `out_metrics` must be null or valid for writes.
 */
enum SaStatus sa_metrics(double o, double p, struct SaMetrics *out_metrics);

/**
 * Classifies one error combination (each mask in `0..8`).
 *
 * # Safety
 * `out_record` must be null or valid for writes.
 */
enum SaStatus sa_classify_case(uint8_t env_mask, uint8_t ent_mask, struct SaCaseRecord *out_record);

/**
 * Builds the 64-row truth table. Free with [`sa_truth_table_free`].
 *
 * # Safety
 * `out_table` must be null or valid for writes.
 */
enum SaStatus sa_truth_table_new(struct SaTruthTable **out_table);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `table` must be null or a handle from [`sa_truth_table_new`].
 */
size_t sa_truth_table_len(const struct SaTruthTable *table);

/**
 * # Safety
 * `table` must be null or a live handle; `out_record` null or writable.
 */
enum SaStatus sa_truth_table_get(const struct SaTruthTable *table,
                                 size_t index,
                                 struct SaCaseRecord *out_record);

/**
 * # Safety
 * `table` must be null or a handle not yet freed.
 */
void sa_truth_table_free(struct SaTruthTable *table);

/**
 * Seeded Monte Carlo over the error channel with the given sensor efficiency.
 *
 * # Safety
 * `out_result` must be null or valid for writes.
 */
enum SaStatus sa_qec_mc_run(uint64_t shots,
                            double o,
                            double p,
                            uint64_t seed,
                            double sensor_efficiency,
                            struct SaQecMcResult *out_result);

/**
 * Default benchmark configuration.
 */
struct SaDjConfig sa_dj_config_default(void);

/**
 * Runs the noisy Deutsch-Jozsa benchmark. Free with [`sa_dj_report_free`].
 *
 * # Safety
 * `config` must be null or readable; `out_report` null or writable.
 */
enum SaStatus sa_dj_run(const struct SaDjConfig *config, struct SaDjReport **out_report);

/**
 * # Safety
 * `report` must be null or a live handle; `out_summary` null or writable.
 */
enum SaStatus sa_dj_report_summary(const struct SaDjReport *report,
                                   struct SaDjSummary *out_summary);

/**
 * Accepted-shot count for measured basis state `state` (qubit 0 is bit 0).
 *
 * # Safety
 * `report` must be null or a live handle; `out_count` null or writable.
 */
enum SaStatus sa_dj_report_count(const struct SaDjReport *report,
                                 size_t state,
                                 uint64_t *out_count);

/**
 * Full report as JSON. Free the string with [`sa_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle; `out_json` null or writable.
 */
enum SaStatus sa_dj_report_to_json(const struct SaDjReport *report, char **out_json);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void sa_dj_report_free(struct SaDjReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void sa_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SENSOR_ASSIST_H */
