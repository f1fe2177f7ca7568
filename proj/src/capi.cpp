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

#include "vqec.h"

#include <cmath>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "experiment.hpp"
#include "rng.hpp"

namespace {

using namespace vqec;

thread_local std::string g_last_error;

// Maps the C++ error taxonomy onto status codes: bad configuration or
// arguments, unusable files, everything else internal.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return VQEC_OK;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return VQEC_ERR_IO;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return VQEC_ERR_CONFIG;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return VQEC_ERR_CONFIG;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VQEC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return VQEC_ERR_INTERNAL;
  }
}

int require(bool ok, const char* message) {
  if (ok) return VQEC_OK;
  g_last_error = message;
  return VQEC_ERR_CONFIG;
}

// Builds the nested single-field document {"a": {"b": value}} for a dotted
// key, parsing the value as JSON when it reads as one (numbers, booleans) and
// as a bare string otherwise.
nlohmann::json nested_update(const std::string& key, const std::string& value) {
  nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
  if (parsed.is_discarded() || parsed.is_object() || parsed.is_array())
    parsed = value;
  nlohmann::json update = parsed;
  size_t end = key.size();
  while (true) {
    size_t dot = key.rfind('.', end - 1);
    std::string part =
        (dot == std::string::npos) ? key.substr(0, end) : key.substr(dot + 1, end - dot - 1);
    if (part.empty()) throw std::invalid_argument("bad config key: " + key);
    update = nlohmann::json{{part, update}};
    if (dot == std::string::npos) break;
    end = dot;
  }
  return update;
}

}  // namespace

struct vqec_experiment {
  vqec::ExperimentConfig config;
  std::optional<vqec::BatchSummary> batch;
  std::optional<vqec::TwoStageSummary> two_stage;
  std::string config_text;
  std::string summary_text;
};

extern "C" {

const char* vqec_version(void) { return "1.0.0"; }

const char* vqec_last_error(void) { return g_last_error.c_str(); }

vqec_experiment* vqec_experiment_create(void) {
  return new (std::nothrow) vqec_experiment();
}

void vqec_experiment_destroy(vqec_experiment* experiment) { delete experiment; }

int vqec_experiment_load_json(vqec_experiment* experiment, const char* json_text) {
  if (int rc = require(experiment && json_text, "null argument")) return rc;
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(json_text);
    experiment->config = experiment_config_from_json(j, experiment->config);
  });
}

int vqec_experiment_load_file(vqec_experiment* experiment, const char* path) {
  if (int rc = require(experiment && path, "null argument")) return rc;
  return guarded([&] {
    std::ifstream in(path);
    if (!in.good()) throw IoError(std::string("cannot read ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    nlohmann::json j = nlohmann::json::parse(text.str());
    experiment->config = experiment_config_from_json(j, experiment->config);
  });
}

int vqec_experiment_set(vqec_experiment* experiment, const char* key,
                        const char* value) {
  if (int rc = require(experiment && key && value, "null argument")) return rc;
  return guarded([&] {
    experiment->config = experiment_config_from_json(
        nested_update(key, value), experiment->config);
  });
}

const char* vqec_experiment_config(vqec_experiment* experiment) {
  if (!experiment) return nullptr;
  experiment->config_text = experiment_config_to_json(experiment->config).dump(2);
  return experiment->config_text.c_str();
}

int vqec_experiment_run(vqec_experiment* experiment, const char* cost_kind) {
  if (int rc = require(experiment && cost_kind, "null argument")) return rc;
  return guarded([&] {
    CostHamiltonian::Kind kind = cost_kind_from_string(cost_kind);
    BatchSummary batch = run_batch(experiment->config, kind);
    if (!experiment->config.output_dir.empty())
      write_batch_outputs(experiment->config, batch);
    experiment->summary_text =
        batch_summary_to_json(experiment->config, batch).dump(2);
    experiment->batch = std::move(batch);
    experiment->two_stage.reset();
  });
}

int vqec_experiment_two_stage(vqec_experiment* experiment, const char* first,
                              const char* second) {
  if (int rc = require(experiment && first && second, "null argument")) return rc;
  return guarded([&] {
    TwoStageSummary summary =
        run_two_stage(experiment->config, cost_kind_from_string(first),
                      cost_kind_from_string(second));
    if (!experiment->config.output_dir.empty())
      write_two_stage_outputs(experiment->config, summary);
    experiment->summary_text =
        two_stage_summary_to_json(experiment->config, summary).dump(2);
    experiment->two_stage = std::move(summary);
    experiment->batch.reset();
  });
}

const char* vqec_experiment_summary(vqec_experiment* experiment) {
  if (!experiment || (!experiment->batch && !experiment->two_stage)) return nullptr;
  return experiment->summary_text.c_str();
}

int vqec_experiment_result(vqec_experiment* experiment, const char* name,
                           double* out) {
  if (int rc = require(experiment && name && out, "null argument")) return rc;
  return guarded([&] {
    const std::string field(name);
    if (experiment->batch) {
      const BatchSummary& batch = *experiment->batch;
      if (field == "success_rate") {
        *out = batch.success_rate;
      } else if (field == "threshold") {
        *out = batch.threshold;
      } else if (field == "num_runs") {
        *out = static_cast<double>(batch.runs.size());
      } else {
        throw std::invalid_argument("unknown batch result: " + field);
      }
      return;
    }
    if (experiment->two_stage) {
      const TwoStageSummary& two = *experiment->two_stage;
      if (field == "max_improvement") {
        *out = two.max_improvement;
      } else if (field == "median_improvement") {
        *out = two.median_improvement;
      } else if (field == "num_runs") {
        *out = static_cast<double>(two.runs.size());
      } else {
        throw std::invalid_argument("unknown two-stage result: " + field);
      }
      return;
    }
    throw std::invalid_argument("no results yet: run the experiment first");
  });
}

int vqec_baseline(const char* noise_kind, double p, double* f0, double* f0_strong,
                  double* identity_residual) {
  if (int rc = require(noise_kind != nullptr, "null noise kind")) return rc;
  return guarded([&] {
    NoiseSpec noise{noise_kind_from_string(noise_kind), p};
    noise.validate();
    BaselineReport report = report_baselines(noise, QubitLayout{});
    if (f0) *f0 = report.f0;
    if (f0_strong) *f0_strong = report.f0_strong;
    if (identity_residual) *identity_residual = report.identity_residual;
  });
}

int vqec_verify_exact_code(const char* noise_kind, double p,
                           double* fidelity_error, double* cost_fid,
                           double* cost_wass) {
  if (int rc = require(noise_kind != nullptr, "null noise kind")) return rc;
  return guarded([&] {
    AnsatzSpec spec;
    spec.layers = kExactCodeLayers;
    NoiseSpec noise{noise_kind_from_string(noise_kind), p};
    noise.validate();
    ExactCodeParams code = exact_code_params(spec, noise.kind);
    Evaluator evaluator(make_pipeline(spec, noise));
    const int n = spec.layout.n();
    if (fidelity_error)
      *fidelity_error = std::abs(1.0 - evaluator.average_fidelity(code.alpha, code.beta));
    if (cost_fid)
      *cost_fid = evaluator.cost(code.alpha, code.beta,
                                 make_cost_hamiltonian(CostHamiltonian::Kind::Fid, n));
    if (cost_wass)
      *cost_wass = evaluator.cost(code.alpha, code.beta,
                                  make_cost_hamiltonian(CostHamiltonian::Kind::Wass, n));
  });
}

int vqec_verify_gradients(uint64_t seed, int points, double* max_abs_error) {
  if (int rc = require(points > 0, "points must be positive")) return rc;
  return guarded([&] {
    AnsatzSpec spec;
    spec.layers = 1;
    NoiseSpec noise{NoiseKind::PhaseFlip, 0.8};
    const int n = spec.layout.n();
    const double pi2 = 2.0 * std::acos(-1.0);
    double worst = 0.0;
    for (CostHamiltonian::Kind kind :
         {CostHamiltonian::Kind::Fid, CostHamiltonian::Kind::Wass}) {
      PipelineObjective objective(make_pipeline(spec, noise),
                                  make_cost_hamiltonian(kind, n));
      SplitMix64 rng{seed + (kind == CostHamiltonian::Kind::Wass ? 1u : 0u)};
      for (int pt = 0; pt < points; ++pt) {
        Eigen::VectorXd alpha(objective.num_alpha()), beta(objective.num_beta());
        for (int i = 0; i < alpha.size(); ++i) alpha(i) = pi2 * rng.uniform01();
        for (int i = 0; i < beta.size(); ++i) beta(i) = pi2 * rng.uniform01();

        Eigen::VectorXd ga, gb, sa, sb;
        objective.gradient(alpha, beta, ga, gb);
        gradient_shift(objective, alpha, beta, sa, sb);
        worst = std::max(worst, (ga - sa).cwiseAbs().maxCoeff());
        worst = std::max(worst, (gb - sb).cwiseAbs().maxCoeff());

        const double h = 1e-5;
        for (int i = 0; i < alpha.size(); ++i) {
          Eigen::VectorXd plus = alpha, minus = alpha;
          plus(i) += h;
          minus(i) -= h;
          double fd =
              (objective.cost(plus, beta) - objective.cost(minus, beta)) / (2 * h);
          worst = std::max(worst, std::abs(fd - ga(i)));
        }
        for (int i = 0; i < beta.size(); ++i) {
          Eigen::VectorXd plus = beta, minus = beta;
          plus(i) += h;
          minus(i) -= h;
          double fd =
              (objective.cost(alpha, plus) - objective.cost(alpha, minus)) / (2 * h);
          worst = std::max(worst, std::abs(fd - gb(i)));
        }
      }
    }
    if (max_abs_error) *max_abs_error = worst;
  });
}

}  // extern "C"
