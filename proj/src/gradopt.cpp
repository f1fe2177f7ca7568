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

#include "gradopt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rng.hpp"

namespace vqec {

namespace {

constexpr double kShift = std::numbers::pi / 4;

double resolved_angle(const Gate& g, const Eigen::VectorXd& params) {
  return g.parametric() ? params(g.slot) : g.angle;
}

}  // namespace

void CostObjective::gradient(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                             Eigen::VectorXd& ga, Eigen::VectorXd& gb) {
  gradient_shift(*this, alpha, beta, ga, gb);
}

double grad_beta(CostObjective& obj, const Eigen::VectorXd& alpha,
                 const Eigen::VectorXd& beta, int j) {
  if (j < 0 || j >= obj.num_beta())
    throw std::out_of_range("recovery slot out of range");
  Eigen::VectorXd bp = beta, bm = beta;
  bp(j) += kShift;
  bm(j) -= kShift;
  return obj.cost(alpha, bp) - obj.cost(alpha, bm);
}

double grad_alpha(CostObjective& obj, const Eigen::VectorXd& alpha,
                  const Eigen::VectorXd& beta, int j) {
  if (j < 0 || j >= obj.num_alpha())
    throw std::out_of_range("encoder slot out of range");
  const double a = alpha(j);
  return obj.cost_alpha_split(alpha, beta, j, a + kShift, a) -
         obj.cost_alpha_split(alpha, beta, j, a - kShift, a) +
         obj.cost_alpha_split(alpha, beta, j, a, a + kShift) -
         obj.cost_alpha_split(alpha, beta, j, a, a - kShift);
}

void gradient_shift(CostObjective& obj, const Eigen::VectorXd& alpha,
                    const Eigen::VectorXd& beta, Eigen::VectorXd& ga,
                    Eigen::VectorXd& gb) {
  ga.resize(obj.num_alpha());
  gb.resize(obj.num_beta());
  for (int j = 0; j < obj.num_alpha(); ++j) ga(j) = grad_alpha(obj, alpha, beta, j);
  for (int j = 0; j < obj.num_beta(); ++j) gb(j) = grad_beta(obj, alpha, beta, j);
}

void pipeline_gradient(const PipelineSpec& spec, const CostHamiltonian& h,
                       const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                       Eigen::VectorXd& ga, Eigen::VectorXd& gb) {
  h.validate();
  const int n = spec.layout.n();
  const int r = spec.layout.r;
  const int nt = spec.layout.total();
  const int dim_qa = spec.layout.dim_qa();
  const int dim = dim_qa * spec.layout.dim_b();
  if (h.n != n)
    throw std::invalid_argument("observable size does not match the data block");
  if (alpha.size() != spec.encoder.num_params || beta.size() != spec.recovery.num_params)
    throw std::invalid_argument("parameter vector size mismatch");

  ga = Eigen::VectorXd::Zero(spec.encoder.num_params);
  gb = Eigen::VectorXd::Zero(spec.recovery.num_params);

  const std::vector<Eigen::Matrix2cd> twirl = two_design_gates();
  const double p = spec.noise.p;
  const Pauli axis = noise_pauli(spec.noise.kind);
  const double keep_amp = std::sqrt(1.0 - p);
  const double flip_amp = std::sqrt(p / n);
  const double weight = 1.0 / static_cast<double>(twirl.size());

  const auto& egates = spec.encoder.gates;
  const auto& wgates = spec.recovery.gates;
  const size_t ne = egates.size();
  const size_t nw = wgates.size();
  std::vector<Vector> enc_fwd(ne, Vector(dim_qa));  // encoded data states
  std::vector<Vector> rec_fwd(nw, Vector(dim));     // recovery forward states
  std::vector<Vector> dec_states(ne, Vector(dim));  // partial un-encodings
  Vector d(dim_qa), phi(dim_qa), x(dim), evec(dim), hvec(dim), scratch(dim),
      eta(dim_qa), scratch_data(dim_qa);

  for (size_t j = 0; j < twirl.size(); ++j) {
    const Gate tw = Gate::fixed(0, twirl[j]);
    // Encoder forward pass on the data block, shared by all noise branches.
    d.setZero();
    d(0) = 1.0;
    apply_gate_vec(d, tw, n, 0.0);
    for (size_t m = 0; m < ne; ++m) {
      apply_gate_vec(d, egates[m], n, resolved_angle(egates[m], alpha));
      enc_fwd[m] = d;
    }
    for (int ell = 0; ell <= n; ++ell) {
      // One noise branch amplitude.
      if (ell == 0) {
        phi = keep_amp * d;
      } else {
        phi = d;
        apply_gate_vec(phi, Gate::fixed(ell - 1, pauli_matrix(axis)), n, 0.0);
        phi *= flip_amp;
      }
      // Append the recovery ancillas in |0...0> and run the recovery.
      x.setZero();
      for (int qa = 0; qa < dim_qa; ++qa) x(qa << r) = phi(qa);
      for (size_t m = 0; m < nw; ++m) {
        apply_gate_vec(x, wgates[m], nt, resolved_angle(wgates[m], beta));
        rec_fwd[m] = x;
      }
      // Un-encode the branch, keeping every intermediate state.
      Vector& svec = x;
      for (size_t m = ne; m-- > 0;) {
        apply_gate_vec_adjoint(svec, egates[m], nt, resolved_angle(egates[m], alpha));
        dec_states[m] = svec;
      }
      // Observable conjugated into the un-encoded frame, applied to it.
      evec = svec;
      apply_gate_vec_adjoint(evec, tw, nt, 0.0);
      for (int i = 0; i < dim; ++i) evec(i) *= h.diagonal(i >> r);
      apply_gate_vec(evec, tw, nt, 0.0);
      // Encoder-inverse contributions; re-encoding evec rebuilds the
      // observable-weighted branch state.
      for (size_t m = 0; m < ne; ++m) {
        const Gate& g = egates[m];
        if (g.parametric()) {
          scratch = dec_states[m];
          apply_pauli_string(scratch, g.generator, nt);
          ga(g.slot) -= 2.0 * weight * evec.dot(scratch).imag();
        }
        apply_gate_vec(evec, g, nt, resolved_angle(g, alpha));
      }
      // Recovery backward pass.
      hvec = evec;
      for (size_t m = nw; m-- > 0;) {
        const Gate& g = wgates[m];
        if (g.parametric()) {
          scratch = rec_fwd[m];
          apply_pauli_string(scratch, g.generator, nt);
          gb(g.slot) += 2.0 * weight * hvec.dot(scratch).imag();
        }
        apply_gate_vec_adjoint(hvec, g, nt, resolved_angle(g, beta));
      }
      // Strip the ancilla block, undo the (self-adjoint) noise branch, and
      // collect the encoder-forward contributions.
      for (int qa = 0; qa < dim_qa; ++qa) eta(qa) = hvec(qa << r);
      if (ell == 0) {
        eta *= keep_amp;
      } else {
        apply_gate_vec(eta, Gate::fixed(ell - 1, pauli_matrix(axis)), n, 0.0);
        eta *= flip_amp;
      }
      for (size_t m = ne; m-- > 0;) {
        const Gate& g = egates[m];
        if (g.parametric()) {
          scratch_data = enc_fwd[m];
          apply_pauli_string(scratch_data, g.generator, n);
          ga(g.slot) += 2.0 * weight * eta.dot(scratch_data).imag();
        }
        apply_gate_vec_adjoint(eta, g, n, resolved_angle(g, alpha));
      }
    }
  }
}

PipelineObjective::PipelineObjective(PipelineSpec spec, CostHamiltonian h)
    : eval_(std::move(spec)), h_(std::move(h)) {
  h_.validate();
  if (h_.n != eval_.spec().layout.n())
    throw std::invalid_argument("observable size does not match the data block");
}

int PipelineObjective::num_alpha() const { return eval_.spec().encoder.num_params; }
int PipelineObjective::num_beta() const { return eval_.spec().recovery.num_params; }

double PipelineObjective::cost(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) {
  return eval_.cost(alpha, beta, h_);
}

double PipelineObjective::cost_alpha_split(const Eigen::VectorXd& alpha,
                                           const Eigen::VectorXd& beta, int slot,
                                           double enc_value, double dec_value) {
  return eval_.cost_alpha_split(alpha, beta, h_, slot, enc_value, dec_value);
}

double PipelineObjective::fidelity(const Eigen::VectorXd& alpha,
                                   const Eigen::VectorXd& beta) {
  return eval_.average_fidelity(alpha, beta);
}

std::string PipelineObjective::kind_name() const { return to_string(h_.kind); }

std::uint64_t PipelineObjective::evaluation_count() const {
  return eval_.evaluation_count();
}

void PipelineObjective::gradient(const Eigen::VectorXd& alpha,
                                 const Eigen::VectorXd& beta, Eigen::VectorXd& ga,
                                 Eigen::VectorXd& gb) {
  pipeline_gradient(eval_.spec(), h_, alpha, beta, ga, gb);
}

GradientMode gradient_mode_from_string(const std::string& name) {
  if (name == "analytic") return GradientMode::Analytic;
  if (name == "shift") return GradientMode::Shift;
  throw std::invalid_argument("unknown gradient mode: " + name);
}

std::string to_string(GradientMode mode) {
  switch (mode) {
    case GradientMode::Analytic: return "analytic";
    case GradientMode::Shift: return "shift";
  }
  throw std::invalid_argument("unknown gradient mode");
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw std::invalid_argument("momentum must lie in [0, 1)");
  if (max_iters < 1) throw std::invalid_argument("at least one iteration is required");
  if (convergence_window < 1)
    throw std::invalid_argument("convergence window must be positive");
  if (!(cost_tolerance > 0.0))
    throw std::invalid_argument("cost tolerance must be positive");
}

RunRecord descend(CostObjective& obj, const OptimizerConfig& config,
                  std::optional<InitialPoint> init) {
  config.validate();
  const int na = obj.num_alpha();
  const int nb = obj.num_beta();
  Eigen::VectorXd alpha(na), beta(nb);
  if (init) {
    if (init->alpha.size() != na || init->beta.size() != nb)
      throw std::invalid_argument("initial point size mismatch");
    alpha = init->alpha;
    beta = init->beta;
  } else {
    SplitMix64 rng{config.seed};
    constexpr double two_pi = 2 * std::numbers::pi;
    for (int i = 0; i < na; ++i) alpha(i) = two_pi * rng.uniform01();
    for (int i = 0; i < nb; ++i) beta(i) = two_pi * rng.uniform01();
  }

  RunRecord rec;
  rec.seed = config.seed;
  rec.cost_kind = obj.kind_name();

  Eigen::VectorXd va = Eigen::VectorXd::Zero(na);
  Eigen::VectorXd vb = Eigen::VectorXd::Zero(nb);
  Eigen::VectorXd ga, gb;
  double c = obj.cost(alpha, beta);
  rec.cost_history.push_back(c);
  double best = c;
  int streak = 0;
  int iter = 0;
  while (iter < config.max_iters) {
    if (config.gradient_mode == GradientMode::Shift) {
      gradient_shift(obj, alpha, beta, ga, gb);
    } else {
      obj.gradient(alpha, beta, ga, gb);
    }
    va = config.momentum * va - config.learning_rate * ga;
    vb = config.momentum * vb - config.learning_rate * gb;
    alpha += va;
    beta += vb;
    c = obj.cost(alpha, beta);
    rec.cost_history.push_back(c);
    ++iter;
    if (best - c >= config.cost_tolerance) {
      streak = 0;
    } else {
      ++streak;
    }
    if (c < best) best = c;
    if (streak >= config.convergence_window) {
      rec.converged = true;
      break;
    }
  }
  rec.iterations = iter;
  rec.final_alpha = alpha;
  rec.final_beta = beta;
  rec.final_fidelity = obj.fidelity(alpha, beta);
  return rec;
}

nlohmann::json optimizer_config_to_json(const OptimizerConfig& config) {
  return nlohmann::json{{"learning_rate", config.learning_rate},
                        {"momentum", config.momentum},
                        {"max_iters", config.max_iters},
                        {"convergence_window", config.convergence_window},
                        {"cost_tolerance", config.cost_tolerance},
                        {"seed", config.seed},
                        {"gradient_mode", to_string(config.gradient_mode)}};
}

OptimizerConfig optimizer_config_from_json(const nlohmann::json& j,
                                           const OptimizerConfig& defaults) {
  OptimizerConfig config = defaults;
  config.learning_rate = j.value("learning_rate", config.learning_rate);
  config.momentum = j.value("momentum", config.momentum);
  config.max_iters = j.value("max_iters", config.max_iters);
  config.convergence_window = j.value("convergence_window", config.convergence_window);
  config.cost_tolerance = j.value("cost_tolerance", config.cost_tolerance);
  config.seed = j.value("seed", config.seed);
  if (j.contains("gradient_mode"))
    config.gradient_mode = gradient_mode_from_string(j.at("gradient_mode").get<std::string>());
  config.validate();
  return config;
}

nlohmann::json run_record_to_json(const RunRecord& record, const OptimizerConfig& config) {
  nlohmann::json j;
  j["seed"] = record.seed;
  j["cost_kind"] = record.cost_kind;
  j["iterations"] = record.iterations;
  j["converged"] = record.converged;
  j["final_fidelity"] = record.final_fidelity;
  j["cost_history"] = record.cost_history;
  j["final_alpha"] = std::vector<double>(record.final_alpha.begin(), record.final_alpha.end());
  j["final_beta"] = std::vector<double>(record.final_beta.begin(), record.final_beta.end());
  j["config"] = optimizer_config_to_json(config);
  return j;
}

}  // namespace vqec
