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

// Command-line harness for the variational error-correction search.
// Talks to the engine exclusively through the C interface in vqec.h.

#include <cstdint>
#include <cstdio>
#include <string>
#include <deque>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <vqec.h>

namespace {

// Prints the pending error message (if any) and converts the status into the
// documented process exit code: 0 success, 2 configuration, 3 I/O.
int finish(int status) {
  if (status != VQEC_OK) {
    const char* message = vqec_last_error();
    std::fprintf(stderr, "error: %s\n",
                 (message != nullptr && message[0] != '\0') ? message
                                                           : "unknown failure");
  }
  return status;
}

// One CLI flag that forwards its text value to a dotted configuration key.
struct KeyedOption {
  CLI::Option* option = nullptr;
  std::string key;
  std::string value;
};

// Registers the flags shared by `run` and `two-stage`; values are forwarded
// verbatim so the engine performs all parsing and validation.
std::deque<KeyedOption>* add_config_options(CLI::App* cmd) {
  auto* opts = new std::deque<KeyedOption>();
  auto add = [cmd, opts](const std::string& flag, const std::string& key,
                         const std::string& help) {
    opts->push_back(KeyedOption{nullptr, key, {}});
    KeyedOption& slot = opts->back();
    slot.option = cmd->add_option(flag, slot.value, help);
  };
  add("--noise", "noise.kind", "Noise kind: bit_flip or phase_flip");
  add("--p", "noise.p", "Noise strength in [0,1]");
  add("--layers", "ansatz.layers", "Circuit layers per unitary");
  add("--structure", "ansatz.structure", "Ansatz structure: layered or dense");
  add("--learning-rate", "opt.learning_rate", "Gradient-descent step size");
  add("--momentum", "opt.momentum", "Momentum coefficient in [0,1)");
  add("--max-iters", "opt.max_iters", "Iteration cap per descent");
  add("--window", "opt.convergence_window", "Plateau-detection window length");
  add("--tol", "opt.cost_tolerance", "Plateau cost tolerance");
  add("--gradient-mode", "opt.gradient_mode", "Gradient mode: analytic or shift");
  add("--restarts", "experiment.num_restarts", "Independent restarts per batch");
  add("--threshold-mode", "experiment.threshold_mode",
      "Success threshold: f0, f0_strong, or custom");
  add("--threshold", "experiment.custom_threshold",
      "Threshold value used when --threshold-mode=custom");
  add("--master-seed", "experiment.master_seed",
      "Master seed; per-run seeds derive from it");
  add("--init", "experiment.init",
      "Initial angles: random or exact_code");
  add("--workers", "experiment.workers",
      "Worker threads (0 = machine worker count)");
  add("--output,-o", "output", "Directory for summary.json and CSV exports");
  return opts;
}

// Applies --config first, then every flag the user passed, in that order.
int apply_config(vqec_experiment* handle, const std::string& config_file,
                 const std::deque<KeyedOption>& options) {
  if (!config_file.empty()) {
    int status = vqec_experiment_load_file(handle, config_file.c_str());
    if (status != VQEC_OK) return status;
  }
  for (const KeyedOption& opt : options) {
    if (opt.option == nullptr || opt.option->count() == 0) continue;
    int status =
        vqec_experiment_set(handle, opt.key.c_str(), opt.value.c_str());
    if (status != VQEC_OK) return status;
  }
  return VQEC_OK;
}

int run_baseline(const std::string& noise, double p) {
  double f0 = 0.0;
  double f0_strong = 0.0;
  double residual = 0.0;
  int status = vqec_baseline(noise.c_str(), p, &f0, &f0_strong, &residual);
  if (status != VQEC_OK) return finish(status);
  std::printf("noise: %s  p: %.17g\n", noise.c_str(), p);
  std::printf("f0:                %.17g\n", f0);
  std::printf("f0_strong:         %.17g\n", f0_strong);
  std::printf("identity_residual: %.17g\n", residual);
  return 0;
}

int run_batch_command(const std::string& config_file,
                      const std::deque<KeyedOption>& options,
                      const std::string& cost) {
  vqec_experiment* handle = vqec_experiment_create();
  if (handle == nullptr) return finish(VQEC_ERR_INTERNAL);
  int status = apply_config(handle, config_file, options);
  if (status == VQEC_OK) status = vqec_experiment_run(handle, cost.c_str());
  if (status == VQEC_OK) std::printf("%s\n", vqec_experiment_summary(handle));
  vqec_experiment_destroy(handle);
  return finish(status);
}

int run_two_stage_command(const std::string& config_file,
                          const std::deque<KeyedOption>& options,
                          const std::string& first, const std::string& second) {
  vqec_experiment* handle = vqec_experiment_create();
  if (handle == nullptr) return finish(VQEC_ERR_INTERNAL);
  int status = apply_config(handle, config_file, options);
  if (status == VQEC_OK) {
    status = vqec_experiment_two_stage(handle, first.c_str(), second.c_str());
  }
  if (status == VQEC_OK) std::printf("%s\n", vqec_experiment_summary(handle));
  vqec_experiment_destroy(handle);
  return finish(status);
}

int run_verify(std::uint64_t seed, int points) {
  bool all_ok = true;

  for (const char* kind : {"bit_flip", "phase_flip"}) {
    for (double p : {0.4, 0.8}) {
      double fidelity_error = 0.0;
      double cost_fid = 0.0;
      double cost_wass = 0.0;
      int status =
          vqec_verify_exact_code(kind, p, &fidelity_error, &cost_fid, &cost_wass);
      if (status != VQEC_OK) return finish(status);
      bool ok = fidelity_error < 1e-9 && cost_fid < 1e-9 && cost_wass < 1e-9;
      all_ok = all_ok && ok;
      std::printf(
          "exact-code %-10s p=%.1f  fidelity_error=%.3e  cost_fid=%.3e  "
          "cost_wass=%.3e  %s\n",
          kind, p, fidelity_error, cost_fid, cost_wass, ok ? "PASS" : "FAIL");
    }
  }

  double max_abs_error = 0.0;
  int status = vqec_verify_gradients(seed, points, &max_abs_error);
  if (status != VQEC_OK) return finish(status);
  bool ok = max_abs_error < 1e-6;
  all_ok = all_ok && ok;
  std::printf("gradients  %d points       max_abs_error=%.3e  %s\n", points,
              max_abs_error, ok ? "PASS" : "FAIL");

  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Variational search for quantum error-correcting encodings: batch "
      "gradient descents over parametric encoder/recovery circuits under "
      "bit-flip or phase-flip noise, with fidelity and Hamming-weight cost "
      "functions."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vqec_version()));

  // baseline
  auto* baseline = app.add_subcommand(
      "baseline", "Print the no-correction fidelity baselines");
  std::string baseline_noise = "phase_flip";
  double baseline_p = 0.8;
  baseline->add_option("--noise", baseline_noise,
                       "Noise kind: bit_flip or phase_flip");
  baseline->add_option("--p", baseline_p, "Noise strength in [0,1]");

  // run
  auto* run = app.add_subcommand(
      "run", "Run a batch of independent descents for one cost function");
  std::string run_config;
  std::string run_cost = "wass";
  run->add_option("--config", run_config, "JSON configuration file");
  run->add_option("--cost", run_cost, "Cost kind: fid, wass, or full");
  std::deque<KeyedOption>* run_options = add_config_options(run);

  // two-stage
  auto* two_stage = app.add_subcommand(
      "two-stage",
      "Descend with one cost, then continue each run with the other");
  std::string two_config;
  std::string first = "fid";
  std::string second = "wass";
  two_stage->add_option("--config", two_config, "JSON configuration file");
  two_stage->add_option("--first", first, "First-stage cost kind");
  two_stage->add_option("--second", second, "Second-stage cost kind");
  std::deque<KeyedOption>* two_options = add_config_options(two_stage);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Check the exact-code benchmark and the gradient rules");
  std::uint64_t verify_seed = 12345;
  int verify_points = 100;
  verify->add_option("--seed", verify_seed, "Seed for the random test points");
  verify->add_option("--points", verify_points, "Number of random test points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; bad usage is config error
  }

  if (baseline->parsed()) return run_baseline(baseline_noise, baseline_p);
  if (run->parsed()) return run_batch_command(run_config, *run_options, run_cost);
  if (two_stage->parsed()) {
    return run_two_stage_command(two_config, *two_options, first, second);
  }
  if (verify->parsed()) return run_verify(verify_seed, verify_points);
  return 2;
}
