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

#ifndef VQEC_COST_HPP
#define VQEC_COST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ansatz.hpp"
#include "noise.hpp"
#include "qsim.hpp"

namespace vqec {

// Diagonal observable on the data register whose expectation in the recovered
// state is the optimisation target.  All kinds share the unique ground state
// |0...0> with eigenvalue 0.
struct CostHamiltonian {
  enum class Kind { Fid, Wass, Full };

  Kind kind = Kind::Fid;
  int n = 0;
  Eigen::VectorXd weights;   // per-qubit weights, Full kind only
  Eigen::VectorXd diagonal;  // length 2^n

  // 0 on |0...0>, 1 on every other basis state: expectation = 1 - fidelity.
  static CostHamiltonian fidelity(int n);
  // Hamming weight of the basis label: counts the number of ones.
  static CostHamiltonian wasserstein(int n);
  // Weighted ones-count, default weights 1 + (q + 1) / n on qubit q: distinct
  // subset sums keep different error patterns ordered.
  static CostHamiltonian full_weighted(int n, const Eigen::VectorXd& weights = {});

  void validate() const;
};

CostHamiltonian::Kind cost_kind_from_string(const std::string& name);
std::string to_string(CostHamiltonian::Kind kind);
CostHamiltonian make_cost_hamiltonian(CostHamiltonian::Kind kind, int n,
                                      const Eigen::VectorXd& weights = {});

struct NoiseSpec {
  NoiseKind kind = NoiseKind::PhaseFlip;
  double p = 0.8;

  void validate() const;
};

// Everything needed to evaluate the twirl-averaged encode / noise / recover /
// decode pipeline.
struct PipelineSpec {
  QubitLayout layout;
  ParametricCircuit encoder;   // on the n data qubits
  ParametricCircuit recovery;  // on all n + r qubits
  NoiseSpec noise;

  void validate() const;
};

PipelineSpec make_pipeline(const AnsatzSpec& ansatz, const NoiseSpec& noise);

// Evaluates costs and fidelities for one pipeline.  The fast path works on
// pure branch states (one per twirl element and Kraus operator) and caches
// the last parameter point, so re-reading a different observable at the same
// angles is free.  evaluation_count() reports how many genuinely new
// parameter points were evaluated.
class Evaluator {
 public:
  explicit Evaluator(PipelineSpec spec);

  double cost(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
              const CostHamiltonian& h);
  double average_fidelity(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta);

  // Cost with the chosen encoder slot split across the two encoder
  // occurrences: enc_value where the encoder prepares the state, dec_value
  // where its inverse closes the pipeline.  Always one fresh evaluation.
  double cost_alpha_split(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                          const CostHamiltonian& h, int slot, double enc_value,
                          double dec_value);

  // Reference route: assembles the averaged density matrix with full channel
  // and partial-trace algebra.  Slower, used for cross-checking.
  DensityMatrix averaged_output_state(const Eigen::VectorXd& alpha,
                                      const Eigen::VectorXd& beta) const;
  double cost_reference(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                        const CostHamiltonian& h) const;

  std::uint64_t evaluation_count() const { return evals_; }
  void reset_evaluation_count() { evals_ = 0; }
  const PipelineSpec& spec() const { return spec_; }

 private:
  void ensure_branches(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta);
  double reduce(const Eigen::VectorXd& diagonal) const;

  PipelineSpec spec_;
  std::vector<Eigen::Matrix2cd> twirl_;
  std::vector<Matrix> twirl_full_;  // twirl gates embedded on the data block
  std::uint64_t evals_ = 0;

  bool alpha_valid_ = false;
  bool beta_valid_ = false;
  bool branches_valid_ = false;
  Eigen::VectorXd cached_alpha_, cached_beta_;
  Matrix v_;                    // encoder matrix at cached alpha
  std::vector<Matrix> mconj_;   // conj(V * twirl_j) per twirl element
  std::vector<Matrix> wcols_;   // recovery columns, reshaped ancilla x data
  std::vector<Matrix> z_;       // branch amplitudes, ancilla x data
};

// Do-nothing fidelity (V = W = identity), twirl-averaged, by actually running
// the pipeline.
double baseline_f0(const NoiseSpec& noise, const QubitLayout& layout);
// Closed form (1 - p) + (p/n) (1/3 + (n - 1) |<0|sigma|0>|^2).
double baseline_f0_closed(const NoiseSpec& noise, const QubitLayout& layout);

// Do-nothing fidelity of the logical qubit alone (code ancillas traced out
// before comparing), by pipeline evaluation.
double baseline_f0_strong(const NoiseSpec& noise, const QubitLayout& layout);
// Closed form (1 - p) + (p/n)/3 + p (n - 1)/n, independent of the flip axis.
double baseline_f0_strong_closed(const NoiseSpec& noise, const QubitLayout& layout);

}  // namespace vqec

#endif  // VQEC_COST_HPP
