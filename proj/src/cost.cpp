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

#include "cost.hpp"

#include <bit>
#include <cmath>

namespace vqec {

namespace {

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

CostHamiltonian CostHamiltonian::fidelity(int n) {
  CostHamiltonian h;
  h.kind = Kind::Fid;
  h.n = n;
  h.diagonal = Eigen::VectorXd::Ones(1 << n);
  h.diagonal(0) = 0.0;
  h.validate();
  return h;
}

CostHamiltonian CostHamiltonian::wasserstein(int n) {
  CostHamiltonian h;
  h.kind = Kind::Wass;
  h.n = n;
  h.diagonal.resize(1 << n);
  for (int b = 0; b < (1 << n); ++b)
    h.diagonal(b) = static_cast<double>(std::popcount(static_cast<unsigned>(b)));
  h.validate();
  return h;
}

CostHamiltonian CostHamiltonian::full_weighted(int n, const Eigen::VectorXd& weights) {
  CostHamiltonian h;
  h.kind = Kind::Full;
  h.n = n;
  if (weights.size() == 0) {
    h.weights.resize(n);
    for (int q = 0; q < n; ++q) h.weights(q) = 1.0 + static_cast<double>(q + 1) / n;
  } else {
    h.weights = weights;
  }
  h.diagonal = Eigen::VectorXd::Zero(1 << n);
  for (int b = 0; b < (1 << n); ++b)
    for (int q = 0; q < n; ++q)
      if (b >> (n - 1 - q) & 1) h.diagonal(b) += h.weights(q);
  h.validate();
  return h;
}

void CostHamiltonian::validate() const {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("observable qubit count out of range");
  if (diagonal.size() != (1 << n))
    throw std::invalid_argument("observable diagonal has the wrong length");
  if (diagonal(0) != 0.0)
    throw std::invalid_argument("|0...0> must be the zero-eigenvalue ground state");
  for (int b = 1; b < (1 << n); ++b)
    if (diagonal(b) <= 0.0)
      throw std::invalid_argument("the ground state must be unique");
  if (kind == Kind::Full) {
    if (weights.size() != n)
      throw std::invalid_argument("full-kind observable needs one weight per qubit");
    for (int q = 0; q < n; ++q)
      if (weights(q) <= 0.0) throw std::invalid_argument("weights must be positive");
  }
}

CostHamiltonian::Kind cost_kind_from_string(const std::string& name) {
  if (name == "fid") return CostHamiltonian::Kind::Fid;
  if (name == "wass") return CostHamiltonian::Kind::Wass;
  if (name == "full") return CostHamiltonian::Kind::Full;
  throw std::invalid_argument("unknown cost kind: " + name);
}

std::string to_string(CostHamiltonian::Kind kind) {
  switch (kind) {
    case CostHamiltonian::Kind::Fid: return "fid";
    case CostHamiltonian::Kind::Wass: return "wass";
    case CostHamiltonian::Kind::Full: return "full";
  }
  throw std::invalid_argument("unknown cost kind");
}

CostHamiltonian make_cost_hamiltonian(CostHamiltonian::Kind kind, int n,
                                      const Eigen::VectorXd& weights) {
  switch (kind) {
    case CostHamiltonian::Kind::Fid: return CostHamiltonian::fidelity(n);
    case CostHamiltonian::Kind::Wass: return CostHamiltonian::wasserstein(n);
    case CostHamiltonian::Kind::Full: return CostHamiltonian::full_weighted(n, weights);
  }
  throw std::invalid_argument("unknown cost kind");
}

void NoiseSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("noise probability must lie in [0, 1]");
}

void PipelineSpec::validate() const {
  layout.validate();
  if (layout.k != 1)
    throw std::invalid_argument("the twirl average is defined for one logical qubit");
  noise.validate();
  encoder.validate();
  recovery.validate();
  if (encoder.num_qubits != layout.n())
    throw std::invalid_argument("encoder must act on the data block");
  if (recovery.num_qubits != layout.total())
    throw std::invalid_argument("recovery must act on data plus recovery ancillas");
}

PipelineSpec make_pipeline(const AnsatzSpec& ansatz, const NoiseSpec& noise) {
  Ansatz a = build_ansatz(ansatz);
  PipelineSpec spec;
  spec.layout = ansatz.layout;
  spec.encoder = std::move(a.encoder);
  spec.recovery = std::move(a.recovery);
  spec.noise = noise;
  spec.validate();
  return spec;
}

Evaluator::Evaluator(PipelineSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  twirl_ = two_design_gates();
  const int n = spec_.layout.n();
  for (const auto& u : twirl_)
    twirl_full_.push_back(gate_matrix(Gate::fixed(0, u), n));
  mconj_.resize(twirl_.size());
  const int branches = static_cast<int>(twirl_.size()) * (n + 1);
  z_.resize(branches);
}

void Evaluator::ensure_branches(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) {
  const int n = spec_.layout.n();
  const int dim_qa = spec_.layout.dim_qa();
  const int dim_b = spec_.layout.dim_b();

  if (alpha.size() != spec_.encoder.num_params || beta.size() != spec_.recovery.num_params)
    throw std::invalid_argument("parameter vector size mismatch");

  bool alpha_hit = alpha_valid_ && same_vector(alpha, cached_alpha_);
  bool beta_hit = beta_valid_ && same_vector(beta, cached_beta_);
  if (alpha_hit && beta_hit && branches_valid_) return;

  if (!alpha_hit) {
    v_ = spec_.encoder.matrix(alpha);
    for (size_t j = 0; j < twirl_.size(); ++j)
      mconj_[j] = (v_ * twirl_full_[j]).conjugate();
    cached_alpha_ = alpha;
    alpha_valid_ = true;
  }
  if (!beta_hit) {
    wcols_.assign(dim_qa, Matrix());
    Vector col(dim_qa * dim_b);
    for (int qa = 0; qa < dim_qa; ++qa) {
      col.setZero();
      col(qa * dim_b) = 1.0;  // data basis state, ancillas in |0...0>
      spec_.recovery.apply(col, beta);
      wcols_[qa] = Eigen::Map<Matrix>(col.data(), dim_b, dim_qa);
    }
    cached_beta_ = beta;
    beta_valid_ = true;
  }

  const double p = spec_.noise.p;
  const Pauli axis = noise_pauli(spec_.noise.kind);
  const double keep_amp = std::sqrt(1.0 - p);
  const double flip_amp = std::sqrt(p / n);

  int branch = 0;
  Vector psi(dim_qa), phi(dim_qa);
  Matrix y(dim_b, dim_qa);
  for (size_t j = 0; j < twirl_.size(); ++j) {
    psi = mconj_[j].conjugate().col(0);  // encoded twirled input
    for (int ell = 0; ell <= n; ++ell, ++branch) {
      if (ell == 0) {
        phi = keep_amp * psi;
      } else {
        phi = psi;
        apply_gate_vec(phi, Gate::fixed(ell - 1, pauli_matrix(axis)), n, 0.0);
        phi *= flip_amp;
      }
      y.setZero();
      for (int qa = 0; qa < dim_qa; ++qa)
        if (phi(qa) != Complex(0, 0)) y.noalias() += phi(qa) * wcols_[qa];
      z_[branch].noalias() = y * mconj_[j];
    }
  }
  branches_valid_ = true;
  ++evals_;
}

double Evaluator::reduce(const Eigen::VectorXd& diagonal) const {
  double acc = 0;
  const int dim_qa = spec_.layout.dim_qa();
  for (const Matrix& z : z_)
    for (int s = 0; s < dim_qa; ++s)
      if (diagonal(s) != 0.0) acc += diagonal(s) * z.col(s).squaredNorm();
  return acc / static_cast<double>(twirl_.size());
}

double Evaluator::cost(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                       const CostHamiltonian& h) {
  h.validate();
  if (h.n != spec_.layout.n())
    throw std::invalid_argument("observable size does not match the data block");
  ensure_branches(alpha, beta);
  return reduce(h.diagonal);
}

double Evaluator::average_fidelity(const Eigen::VectorXd& alpha,
                                   const Eigen::VectorXd& beta) {
  ensure_branches(alpha, beta);
  double acc = 0;
  for (const Matrix& z : z_) acc += z.col(0).squaredNorm();
  return acc / static_cast<double>(twirl_.size());
}

double Evaluator::cost_alpha_split(const Eigen::VectorXd& alpha,
                                   const Eigen::VectorXd& beta,
                                   const CostHamiltonian& h, int slot,
                                   double enc_value, double dec_value) {
  h.validate();
  if (h.n != spec_.layout.n())
    throw std::invalid_argument("observable size does not match the data block");
  if (alpha.size() != spec_.encoder.num_params || beta.size() != spec_.recovery.num_params)
    throw std::invalid_argument("parameter vector size mismatch");
  if (slot < 0 || slot >= spec_.encoder.num_params)
    throw std::out_of_range("encoder slot out of range");

  const int n = spec_.layout.n();
  const int dim_qa = spec_.layout.dim_qa();
  const int dim_b = spec_.layout.dim_b();

  // Reuse the cached recovery columns when beta matches; otherwise refresh
  // them (the stored branch amplitudes then belong to a stale beta).
  if (!(beta_valid_ && same_vector(beta, cached_beta_))) {
    wcols_.assign(dim_qa, Matrix());
    Vector col(dim_qa * dim_b);
    for (int qa = 0; qa < dim_qa; ++qa) {
      col.setZero();
      col(qa * dim_b) = 1.0;
      spec_.recovery.apply(col, beta);
      wcols_[qa] = Eigen::Map<Matrix>(col.data(), dim_b, dim_qa);
    }
    cached_beta_ = beta;
    beta_valid_ = true;
    branches_valid_ = false;
  }

  Eigen::VectorXd alpha_enc = alpha, alpha_dec = alpha;
  alpha_enc(slot) = enc_value;
  alpha_dec(slot) = dec_value;
  const Matrix venc = spec_.encoder.matrix(alpha_enc);
  const Matrix vdec = spec_.encoder.matrix(alpha_dec);

  const double p = spec_.noise.p;
  const Pauli axis = noise_pauli(spec_.noise.kind);
  const double keep_amp = std::sqrt(1.0 - p);
  const double flip_amp = std::sqrt(p / n);

  double acc = 0;
  Vector psi(dim_qa), phi(dim_qa);
  Matrix y(dim_b, dim_qa), menc(dim_qa, dim_qa), mdec_conj(dim_qa, dim_qa),
      z(dim_b, dim_qa);
  for (size_t j = 0; j < twirl_.size(); ++j) {
    menc.noalias() = venc * twirl_full_[j];
    mdec_conj.noalias() = (vdec * twirl_full_[j]).conjugate();
    psi = menc.col(0);
    for (int ell = 0; ell <= n; ++ell) {
      if (ell == 0) {
        phi = keep_amp * psi;
      } else {
        phi = psi;
        apply_gate_vec(phi, Gate::fixed(ell - 1, pauli_matrix(axis)), n, 0.0);
        phi *= flip_amp;
      }
      y.setZero();
      for (int qa = 0; qa < dim_qa; ++qa)
        if (phi(qa) != Complex(0, 0)) y.noalias() += phi(qa) * wcols_[qa];
      z.noalias() = y * mdec_conj;
      for (int s = 0; s < dim_qa; ++s)
        if (h.diagonal(s) != 0.0) acc += h.diagonal(s) * z.col(s).squaredNorm();
    }
  }
  ++evals_;
  return acc / static_cast<double>(twirl_.size());
}

DensityMatrix Evaluator::averaged_output_state(const Eigen::VectorXd& alpha,
                                               const Eigen::VectorXd& beta) const {
  const int n = spec_.layout.n();
  const int r = spec_.layout.r;
  if (alpha.size() != spec_.encoder.num_params || beta.size() != spec_.recovery.num_params)
    throw std::invalid_argument("parameter vector size mismatch");

  const Matrix venc = spec_.encoder.matrix(alpha);
  const Matrix wrec = spec_.recovery.matrix(beta);
  const KrausChannel channel =
      build_noise_channel(spec_.noise.kind, spec_.noise.p, n);
  std::vector<int> keep(n);
  for (int q = 0; q < n; ++q) keep[q] = q;

  DensityMatrix acc;
  acc.num_qubits = n;
  acc.mat = Matrix::Zero(1 << n, 1 << n);
  for (size_t j = 0; j < twirl_.size(); ++j) {
    DensityMatrix rho = pure_state(n, 0);
    apply_unitary(rho, twirl_full_[j]);
    apply_unitary(rho, venc);
    apply_channel(rho, channel);
    rho = extend_with_ancilla(rho, r);
    apply_unitary(rho, wrec);
    rho = partial_trace(rho, keep);
    apply_unitary(rho, Matrix(venc.adjoint()));
    apply_unitary(rho, Matrix(twirl_full_[j].adjoint()));
    acc.mat += rho.mat;
  }
  acc.mat /= static_cast<double>(twirl_.size());
  return acc;
}

double Evaluator::cost_reference(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                                 const CostHamiltonian& h) const {
  h.validate();
  DensityMatrix rho = averaged_output_state(alpha, beta);
  return expectation(rho, h.diagonal);
}

namespace {

ParametricCircuit identity_circuit(int num_qubits) {
  ParametricCircuit c;
  c.num_qubits = num_qubits;
  return c;
}

}  // namespace

double baseline_f0(const NoiseSpec& noise, const QubitLayout& layout) {
  PipelineSpec spec;
  spec.layout = layout;
  spec.encoder = identity_circuit(layout.n());
  spec.recovery = identity_circuit(layout.total());
  spec.noise = noise;
  Evaluator eval(std::move(spec));
  const Eigen::VectorXd empty;
  return eval.average_fidelity(empty, empty);
}

double baseline_f0_closed(const NoiseSpec& noise, const QubitLayout& layout) {
  layout.validate();
  noise.validate();
  const int n = layout.n();
  const double z = (noise.kind == NoiseKind::PhaseFlip) ? 1.0 : 0.0;
  return (1.0 - noise.p) + (noise.p / n) * (1.0 / 3.0 + (n - 1) * z);
}

double baseline_f0_strong(const NoiseSpec& noise, const QubitLayout& layout) {
  layout.validate();
  if (layout.k != 1)
    throw std::invalid_argument("the twirl average is defined for one logical qubit");
  noise.validate();
  const int n = layout.n();
  const KrausChannel channel = build_noise_channel(noise.kind, noise.p, n);
  const std::vector<Eigen::Matrix2cd> twirl = two_design_gates();
  double acc = 0;
  for (const auto& u : twirl) {
    DensityMatrix rho = pure_state(n, 0);
    Matrix uj = gate_matrix(Gate::fixed(0, u), n);
    apply_unitary(rho, uj);
    apply_channel(rho, channel);
    apply_unitary(rho, Matrix(uj.adjoint()));
    DensityMatrix logical = partial_trace(rho, {0});
    acc += logical.mat(0, 0).real();
  }
  return acc / static_cast<double>(twirl.size());
}

double baseline_f0_strong_closed(const NoiseSpec& noise, const QubitLayout& layout) {
  layout.validate();
  noise.validate();
  const int n = layout.n();
  return (1.0 - noise.p) + (noise.p / n) / 3.0 +
         noise.p * static_cast<double>(n - 1) / n;
}

}  // namespace vqec
