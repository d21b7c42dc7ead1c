/* SPDX-License-Identifier: Apache-2.0 */
#ifndef SIGSCOPE_H
#define SIGSCOPE_H

/*
 * C interface to the sigscope core: scenario handles are opaque, results are
 * returned as heap-allocated JSON/CSV documents, and every call reports a
 * status code. Strings handed out by the library are released with
 * sigscope_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sigscope_status {
  SIGSCOPE_OK = 0,
  SIGSCOPE_ERROR_INVALID_ARGUMENT = 1,
  SIGSCOPE_ERROR_PARSE = 2,
  SIGSCOPE_ERROR_IO = 3,
  SIGSCOPE_ERROR_SOUNDNESS = 4,
  SIGSCOPE_ERROR_INTERNAL = 5
} sigscope_status;

typedef struct sigscope_scenario sigscope_scenario;

const char* sigscope_version(void);
const char* sigscope_status_name(sigscope_status status);
/* thread-local message for the most recent failing call */
const char* sigscope_last_error(void);
void sigscope_string_free(char* s);

/* ---- scenarios ---------------------------------------------------------- */

sigscope_status sigscope_scenario_parse(const char* json_text,
                                        sigscope_scenario** out);
sigscope_status sigscope_scenario_load(const char* filename,
                                       sigscope_scenario** out);
sigscope_status sigscope_scenario_builtin(const char* name,
                                          sigscope_scenario** out);
/* comma-separated list, static storage */
const char* sigscope_scenario_builtin_names(void);
void sigscope_scenario_free(sigscope_scenario* scenario);

double sigscope_scenario_length(const sigscope_scenario* scenario);
size_t sigscope_scenario_segment_count(const sigscope_scenario* scenario);
const char* sigscope_scenario_kind(const sigscope_scenario* scenario);
sigscope_status sigscope_scenario_to_json(const sigscope_scenario* scenario,
                                          char** json_out);

/* ---- pipelines ----------------------------------------------------------- */

/*
 * Length-recovery report. For singular-cusp scenarios with c in (0,1) the
 * push-in analysis runs at each t2 = L/2 + t2_offsets[i]; pass
 * t2_offsets = NULL to skip it. Any of the three outputs may be NULL.
 * Returns SIGSCOPE_ERROR_SOUNDNESS if a certified bound exceeds the true
 * length (a bug, surfaced as exit code 2 by the CLI).
 */
sigscope_status sigscope_estimate(const sigscope_scenario* scenario, int depth,
                                  const double* lambdas, size_t n_lambdas,
                                  double kappa, const double* t2_offsets,
                                  size_t n_offsets, char** report_json,
                                  char** signature_csv, char** development_csv);

sigscope_status sigscope_develop(const sigscope_scenario* scenario,
                                 const double* lambdas, size_t n_lambdas,
                                 char** report_json, char** csv_out);

/*
 * Angle dynamics of the time-reversed scenario path. phi0_policy is
 * "aligned", "fixed" (with phi0 = policy_value) or "endpoint_free" (with
 * kappa = policy_value). samples = 0 dumps one trace row per breakpoint.
 */
sigscope_status sigscope_dynamics(const sigscope_scenario* scenario,
                                  double lambda, const char* phi0_policy,
                                  double policy_value, size_t samples,
                                  char** report_json, char** trace_csv);

/*
 * Randomized lemma suite. lemma_id is one of RangePhi, DeviPhi, CatTim,
 * EntryTime, BadSet, Comparison, C1Convergence, SmallAngleEntry.
 * counts_out, if non-NULL, receives {pass, fail, skip, vacuous}.
 */
sigscope_status sigscope_lemma_suite(const char* lemma_id, uint64_t seed,
                                     uint32_t count, char** verdicts_json,
                                     uint32_t counts_out[4]);

const char* sigscope_lemma_names(void);

#ifdef __cplusplus
}
#endif

#endif /* SIGSCOPE_H */
