// Copyright 2026 The vqec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VQEC_EXPERIMENT_HPP
#define VQEC_EXPERIMENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradopt.hpp"

namespace vqec {

// Failure to write or read an output artifact; callers map this to an I/O
// exit status, distinct from configuration errors (std::invalid_argument).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Success filter for a batch: the do-nothing fidelity of the full data
// register (f0), of the logical qubit alone (f0_strong, the default), or an
// explicit number.
enum class ThresholdMode { F0, F0Strong, Custom };
ThresholdMode threshold_mode_from_string(const std::string& name);
std::string to_string(ThresholdMode mode);

// Where each restart starts: fresh uniform angles per derived seed, or the
// closed-form code point (requires a layered ansatz deep enough to hold it).
enum class InitMode { Random, ExactCode };
InitMode init_mode_from_string(const std::string& name);
std::string to_string(InitMode mode);

struct ExperimentConfig {
  NoiseSpec noise;
  AnsatzSpec ansatz;
  OptimizerConfig opt;
  int num_restarts = 1;
  ThresholdMode threshold_mode = ThresholdMode::F0Strong;
  double custom_threshold = 0.0;
  std::uint64_t master_seed = 1;
  InitMode init = InitMode::Random;
  int workers = 0;  // 0: one per available hardware thread
  std::string output_dir;

  void validate() const;
};

// Reads any subset of the documented keys over the given defaults:
//   noise.kind, noise.p, ansatz.layers, ansatz.structure, opt.learning_rate,
//   opt.momentum, opt.max_iters, opt.convergence_window, opt.cost_tolerance,
//   experiment.num_restarts, experiment.threshold_mode,
//   experiment.custom_threshold, experiment.master_seed, experiment.init,
//   experiment.workers, output.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const ExperimentConfig& defaults = {});
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

// The success threshold the config selects.
double threshold_value(const ExperimentConfig& config);

struct Histogram {
  std::vector<double> edges;  // counts.size() + 1, ascending
  std::vector<int> counts;
};

// Equal-width bins over [lo, hi]; values on the right edge land in the last
// bin, values outside the range are dropped.
Histogram make_histogram(const std::vector<double>& values, double lo, double hi,
                         int bins);

struct BatchSummary {
  std::string cost_kind;
  double threshold = 0.0;
  double success_rate = 0.0;  // fraction of runs with final_fidelity >= threshold
  std::vector<RunRecord> runs;
  // Over the runs passing the filter, matching the published histograms.
  Histogram fidelity_hist;
  Histogram iteration_hist;
};

// num_restarts independent descents; run i draws its angles under
// derive_seed(master_seed, i).  Restarts spread over a worker pool; results
// are identical for every worker count.
BatchSummary run_batch(const ExperimentConfig& config, CostHamiltonian::Kind kind);

struct TwoStageRun {
  std::uint64_t seed = 0;
  double first_fidelity = 0.0;
  double second_fidelity = 0.0;
  double improvement = 0.0;  // second - first
  int first_iterations = 0;
  int second_iterations = 0;
  bool first_converged = false;
  bool second_converged = false;
};

struct TwoStageSummary {
  std::string first_kind;
  std::string second_kind;
  std::vector<TwoStageRun> runs;
  double max_improvement = 0.0;
  double median_improvement = 0.0;
  Histogram improvement_hist;
};

// Per restart: descend under the first cost from a fresh random point, then
// under the second cost from the angles the first descent reached.  Rejects
// first == second.
TwoStageSummary run_two_stage(const ExperimentConfig& config,
                              CostHamiltonian::Kind first,
                              CostHamiltonian::Kind second);

struct BaselineReport {
  double f0 = 0.0;
  double f0_strong = 0.0;
  // Residual of the identity f0 = f0_strong - ((n-1)/n) p (1 - |<0|sigma|0>|^2),
  // with both sides evaluated by running the pipeline.
  double identity_residual = 0.0;
};

BaselineReport report_baselines(const NoiseSpec& noise, const QubitLayout& layout);

// summary.json, runs.csv, hist_fidelity.csv, hist_iterations.csv under
// config.output_dir.  Identical config and master seed give byte-identical
// files.  Throws IoError when the directory cannot be used.
void write_batch_outputs(const ExperimentConfig& config, const BatchSummary& batch);

// summary.json and hist_improvement.csv for a two-stage comparison.
void write_two_stage_outputs(const ExperimentConfig& config,
                             const TwoStageSummary& summary);

nlohmann::json batch_summary_to_json(const ExperimentConfig& config,
                                     const BatchSummary& batch);
nlohmann::json two_stage_summary_to_json(const ExperimentConfig& config,
                                         const TwoStageSummary& summary);

}  // namespace vqec

#endif  // VQEC_EXPERIMENT_HPP
