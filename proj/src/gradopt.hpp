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

#ifndef VQEC_GRADOPT_HPP
#define VQEC_GRADOPT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cost.hpp"

namespace vqec {

// A differentiable objective over encoder angles alpha and recovery angles
// beta.  evaluation_count() reports full cost evaluations, the unit in which
// gradient prices are quoted.
class CostObjective {
 public:
  virtual ~CostObjective() = default;

  virtual int num_alpha() const = 0;
  virtual int num_beta() const = 0;
  virtual double cost(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) = 0;
  // Same cost except that the chosen encoder slot takes enc_value where the
  // encoder is applied and dec_value where its inverse is applied.  One full
  // evaluation.
  virtual double cost_alpha_split(const Eigen::VectorXd& alpha,
                                  const Eigen::VectorXd& beta, int slot,
                                  double enc_value, double dec_value) = 0;
  virtual double fidelity(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) = 0;
  virtual std::string kind_name() const = 0;
  virtual std::uint64_t evaluation_count() const = 0;

  // Full gradient.  The default assembles it from the quarter-turn shift
  // rules below; overrides must agree with those to high precision.
  virtual void gradient(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                        Eigen::VectorXd& grad_alpha, Eigen::VectorXd& grad_beta);
};

// Derivative with respect to one recovery angle: the cost difference at
// quarter-turn shifts, C(beta_j + pi/4) - C(beta_j - pi/4).  Exactly two
// evaluations; the recovery appears once per branch amplitude, so the
// two-term rule is exact.
double grad_beta(CostObjective& obj, const Eigen::VectorXd& alpha,
                 const Eigen::VectorXd& beta, int j);

// Derivative with respect to one encoder angle.  The encoder appears both as
// V and as the closing inverse, so the angle is shifted on each occurrence
// separately while freezing the other:
//   g(a + pi/4, a) - g(a - pi/4, a) + g(a, a + pi/4) - g(a, a - pi/4)
// with g(enc, dec) the split cost.  Exactly four evaluations.
double grad_alpha(CostObjective& obj, const Eigen::VectorXd& alpha,
                  const Eigen::VectorXd& beta, int j);

// All components via the literal shift rules: 4 |alpha| + 2 |beta| cost
// evaluations.
void gradient_shift(CostObjective& obj, const Eigen::VectorXd& alpha,
                    const Eigen::VectorXd& beta, Eigen::VectorXd& grad_alpha,
                    Eigen::VectorXd& grad_beta);

// Whole gradient of the pipeline cost in one forward/backward sweep over the
// branch states.  Mathematically identical to the shift rules (both are exact
// derivatives); costs about two evaluations total instead of two or four per
// component.
void pipeline_gradient(const PipelineSpec& spec, const CostHamiltonian& h,
                       const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                       Eigen::VectorXd& grad_alpha, Eigen::VectorXd& grad_beta);

// The encode / noise / recover / decode pipeline as an objective for one
// fixed observable.  gradient() uses the accumulated sweep.
class PipelineObjective : public CostObjective {
 public:
  PipelineObjective(PipelineSpec spec, CostHamiltonian h);

  int num_alpha() const override;
  int num_beta() const override;
  double cost(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) override;
  double cost_alpha_split(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                          int slot, double enc_value, double dec_value) override;
  double fidelity(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) override;
  std::string kind_name() const override;
  std::uint64_t evaluation_count() const override;
  void gradient(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                Eigen::VectorXd& grad_alpha, Eigen::VectorXd& grad_beta) override;

  Evaluator& evaluator() { return eval_; }
  const CostHamiltonian& hamiltonian() const { return h_; }

 private:
  Evaluator eval_;
  CostHamiltonian h_;
};

enum class GradientMode { Analytic, Shift };
GradientMode gradient_mode_from_string(const std::string& name);
std::string to_string(GradientMode mode);

struct OptimizerConfig {
  double learning_rate = 0.05;
  double momentum = 0.9;
  int max_iters = 2000;
  int convergence_window = 10;
  double cost_tolerance = 1e-6;
  std::uint64_t seed = 0;
  GradientMode gradient_mode = GradientMode::Analytic;

  void validate() const;
};

struct InitialPoint {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::string cost_kind;
  std::vector<double> cost_history;  // cost at the initial point and after
                                     // each iteration: iterations + 1 entries
  Eigen::VectorXd final_alpha;
  Eigen::VectorXd final_beta;
  double final_fidelity = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Momentum descent v <- mu v - eta grad C, theta <- theta + v.  Without an
// initial point, angles are drawn uniformly from [0, 2 pi) under the config
// seed (all alpha components first, then all beta components).  Stops once
// the best cost seen has failed to improve by cost_tolerance for
// convergence_window consecutive iterations, or at max_iters with
// converged = false; non-convergence is a recorded outcome, not an error.
// Final parameters are the last iterate.
RunRecord descend(CostObjective& obj, const OptimizerConfig& config,
                  std::optional<InitialPoint> init = std::nullopt);

nlohmann::json optimizer_config_to_json(const OptimizerConfig& config);
// Reads any subset of the config fields from JSON over the given defaults.
OptimizerConfig optimizer_config_from_json(const nlohmann::json& j,
                                           const OptimizerConfig& defaults = {});
nlohmann::json run_record_to_json(const RunRecord& record, const OptimizerConfig& config);

}  // namespace vqec

#endif  // VQEC_GRADOPT_HPP
