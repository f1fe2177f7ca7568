/* Copyright 2026 The vqec authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the variational error-correction search library.
 *
 * Every function that can fail returns an int status: VQEC_OK on success, a
 * nonzero code otherwise, with a human-readable message available from
 * vqec_last_error() on the calling thread.  Experiment state lives behind an
 * opaque handle; strings returned from handle queries stay owned by the
 * handle and remain valid until the next call on that handle or its
 * destruction.
 */

#ifndef VQEC_H
#define VQEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (the command-line tool reuses them as exit codes). */
#define VQEC_OK 0
#define VQEC_ERR_CONFIG 2   /* invalid configuration or argument */
#define VQEC_ERR_IO 3       /* unreadable input or unwritable output */
#define VQEC_ERR_INTERNAL 4 /* unexpected failure */

/* Library version as "major.minor.patch". */
const char* vqec_version(void);

/* Message for the most recent failure on this thread; empty string when the
 * last call succeeded. */
const char* vqec_last_error(void);

/* An experiment: a configuration plus, after a run, its results. */
typedef struct vqec_experiment vqec_experiment;

/* Fresh experiment with default configuration (phase-flip p = 0.8, layered
 * two-layer ansatz, momentum descent, one restart).  NULL only on allocation
 * failure.  Destroy with vqec_experiment_destroy; destroying NULL is a no-op. */
vqec_experiment* vqec_experiment_create(void);
void vqec_experiment_destroy(vqec_experiment* experiment);

/* Merge configuration from a JSON document (text or file).  Documented keys:
 *   noise.kind        "bit_flip" | "phase_flip" | "y_flip"
 *   noise.p           flip probability in [0, 1]
 *   ansatz.layers     repetitions of the circuit recipe (>= 1)
 *   ansatz.structure  "layered" | "dense"
 *   opt.learning_rate, opt.momentum, opt.max_iters,
 *   opt.convergence_window, opt.cost_tolerance
 *   experiment.num_restarts, experiment.threshold_mode ("f0" | "f0_strong" |
 *   "custom"), experiment.custom_threshold, experiment.master_seed,
 *   experiment.init ("random" | "exact_code"), experiment.workers
 *   output            directory for result files
 * Unknown keys are ignored; invalid values fail with VQEC_ERR_CONFIG and
 * leave the previous configuration in place. */
int vqec_experiment_load_json(vqec_experiment* experiment, const char* json_text);
int vqec_experiment_load_file(vqec_experiment* experiment, const char* path);

/* Set a single configuration field by its dotted key (as listed above).  The
 * value is given as text and parsed to the field's type. */
int vqec_experiment_set(vqec_experiment* experiment, const char* key,
                        const char* value);

/* Current configuration as a JSON document. */
const char* vqec_experiment_config(vqec_experiment* experiment);

/* Run num_restarts independent descents under the given cost kind ("fid",
 * "wass", or "full").  When an output directory is configured, writes
 * summary.json, runs.csv, hist_fidelity.csv, and hist_iterations.csv there. */
int vqec_experiment_run(vqec_experiment* experiment, const char* cost_kind);

/* Per restart: descend under the first cost, then continue under the second
 * from the reached point.  The kinds must differ.  When an output directory
 * is configured, writes summary.json and hist_improvement.csv. */
int vqec_experiment_two_stage(vqec_experiment* experiment, const char* first,
                              const char* second);

/* Summary of the most recent run or two-stage comparison as JSON; NULL when
 * nothing has run yet. */
const char* vqec_experiment_summary(vqec_experiment* experiment);

/* Named scalar from the most recent run:
 *   after vqec_experiment_run:  "success_rate", "threshold", "num_runs"
 *   after vqec_experiment_two_stage: "max_improvement", "median_improvement",
 *   "num_runs"
 * Fails with VQEC_ERR_CONFIG for unknown names or before any run. */
int vqec_experiment_result(vqec_experiment* experiment, const char* name,
                           double* out);

/* Do-nothing baselines for a noise model on the standard one-logical-qubit,
 * two-code-qubit register: the plain average fidelity, the variant scoring
 * only the logical qubit, and the residual of the identity relating them.
 * Output pointers may be NULL. */
int vqec_baseline(const char* noise_kind, double p, double* f0, double* f0_strong,
                  double* identity_residual);

/* Self-check: drive the pipeline at the closed-form code parameters and
 * report |1 - average fidelity| plus both cost values (should all be ~1e-10
 * or below for bit-flip and phase-flip noise at any p). */
int vqec_verify_exact_code(const char* noise_kind, double p,
                           double* fidelity_error, double* cost_fid,
                           double* cost_wass);

/* Self-check: at `points` random parameter points, compare the sweep
 * gradient, the quarter-turn shift rules, and central finite differences for
 * both cost kinds; reports the worst absolute component deviation. */
int vqec_verify_gradients(uint64_t seed, int points, double* max_abs_error);

#ifdef __cplusplus
}
#endif

#endif /* VQEC_H */
