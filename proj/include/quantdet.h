/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the quantized-detection library. All entry points return a
 * status code; on failure qd_last_error() describes the problem for the
 * calling thread. Strings returned through char** are heap-allocated and must
 * be released with qd_string_free(). Handles are opaque and must be released
 * with their matching destroy function.
 */
#ifndef QUANTDET_H
#define QUANTDET_H

#ifdef __cplusplus
extern "C" {
#endif

#define QD_OK 0
#define QD_ERR_VALIDATION 2  /* malformed config or argument values */
#define QD_ERR_DEGENERATE 3  /* detector carries no information */
#define QD_ERR_IO 4          /* serialization failure */
#define QD_ERR_INVALID_ARG 5 /* null pointer or unknown selector */
#define QD_ERR_INTERNAL 6

/* Library version string, e.g. "1.0.0". Never fails. */
const char* qd_version(void);

/* Message for the most recent failure on this thread; empty if none. */
const char* qd_last_error(void);

void qd_string_free(char* s);

typedef struct qd_experiment qd_experiment;
typedef struct qd_result qd_result;

/* Parses and validates a JSON experiment config (see README for the schema).
 * The handle captures the config text for provenance hashing. */
int qd_experiment_create(const char* config_json, qd_experiment** out);

/* Overrides applied after parsing; results never depend on thread count. */
int qd_experiment_set_threads(qd_experiment* exp, int threads);
int qd_experiment_set_trials(qd_experiment* exp, int trials);
int qd_experiment_set_seed(qd_experiment* exp, unsigned long long seed);

/* command is one of "roc", "pd-vs-m", "pd-vs-snr", "mismatch"; the config's
 * sweep axis must match. */
int qd_experiment_run(qd_experiment* exp, const char* command, qd_result** out);

void qd_experiment_destroy(qd_experiment* exp);

/* CSV rows: sweep,detector,pfa_theory,pd_theory,pfa_mc,pd_mc,ci,trials */
int qd_result_csv(const qd_result* res, char** out_text);

/* Provenance record: command, config hash, seed, trials, mode, row count,
 * tool version. Deterministic for a given (config, seed). */
int qd_result_manifest(const qd_result* res, char** out_text);

/* Number of detectors that were skipped as degenerate (warning rows). */
int qd_result_degenerate_count(const qd_result* res, int* out_count);

void qd_result_destroy(qd_result* res);

/* Optimizes thresholds for kind "rq" / "lq", or evaluates the uniform-grid
 * quantizer for kind "lqu". Returns a JSON record
 * {kind,q,thresholds,objective,normalized_fi,are}. */
int qd_design(const char* kind, int q, double pe, unsigned long long seed, char** out_json);

/* One design row per (kind, q, pe) over comma-separated lists, as CSV
 * kind,q,pe,are,normalized_fi,thresholds. */
int qd_design_table(const char* kinds, const char* qs, const char* pes, unsigned long long seed,
                    char** out_csv);

/* Single-threshold information trace over a grid in noise-sigma units, as CSV
 * tau,normalized_fi. kind is "rq" or "lq". */
int qd_threshold_sweep(const char* kind, double pe, double grid_low, double grid_high, double step,
                       char** out_csv);

/* Fisher-information report for an explicit scenario. Request JSON:
 *   {"kind","q","thresholds" (or "design_pe"), "pe","p",
 *    "sigma0_sq","sigma_w_sq","M","h_norm_sq"}
 * Response JSON: {"fi0","fi_at_p","fi_clairvoyant","normalized_fi","are",
 *                 "snr_db"}. */
int qd_fisher(const char* request_json, char** out_json);

/* Validation only: QD_OK or QD_ERR_VALIDATION. */
int qd_validate(const char* config_json);

#ifdef __cplusplus
}
#endif

#endif /* QUANTDET_H */
