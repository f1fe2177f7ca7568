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

#ifndef VQEC_QSIM_HPP
#define VQEC_QSIM_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Exact dense simulation; capped at five qubits (32 x 32 operators).
inline constexpr int kMaxQubits = 5;

enum class Pauli : int { X = 1, Y = 2, Z = 3 };

Eigen::Matrix2cd pauli_matrix(Pauli p);

// A tensor product of single-qubit Pauli factors on distinct qubits.
using PauliString = std::vector<std::pair<int, Pauli>>;

// Register split: k logical qubits, n_minus_k code ancillas (together the
// data block of n = k + n_minus_k qubits), and r recovery ancillas appended
// after the data block.  Qubit 0 is the most significant bit of basis indices.
struct QubitLayout {
  int k = 1;
  int n_minus_k = 2;
  int r = 2;

  int n() const { return k + n_minus_k; }
  int total() const { return n() + r; }
  int dim_qa() const { return 1 << n(); }
  int dim_b() const { return 1 << r; }
  void validate() const;  // throws std::invalid_argument on bad shapes
};

struct Control {
  int qubit = 0;
  bool on_one = true;  // false activates when the control qubit is |0>
};

// One circuit element.  Either a fixed 2x2 unitary on a target qubit with
// optional (multi-)controls, or a rotation exp(-i * angle * P) generated by a
// Pauli string P.  A rotation's angle is literal, or bound to parameter slot
// `slot` when slot >= 0 (the caller supplies the value at application time).
struct Gate {
  enum class Kind { Fixed, Rotation };

  Kind kind = Kind::Fixed;
  int target = 0;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  std::vector<Control> controls;
  PauliString generator;
  double angle = 0.0;
  int slot = -1;

  static Gate fixed(int target, const Eigen::Matrix2cd& u, std::vector<Control> controls = {});
  static Gate rotation(PauliString generator, double angle);
  static Gate rotation_slot(PauliString generator, int slot);

  bool parametric() const { return slot >= 0; }
};

struct DensityMatrix {
  int num_qubits = 0;
  Matrix mat;

  int dim() const { return 1 << num_qubits; }
};

struct KrausChannel {
  int num_qubits = 0;
  std::vector<Matrix> kraus;

  // Checks operator dimensions and the completeness sum_k K^dag K = I.
  void validate(double tol = 1e-12) const;
};

// |b><b| on num_qubits qubits; qubit 0 indexes the most significant bit.
DensityMatrix pure_state(int num_qubits, std::uint32_t basis_index);

// In-place rho -> U rho U^dag.  The Gate overload requires a literal angle
// (slot-bound rotations throw); the Matrix overload takes a full-dimension U.
void apply_unitary(DensityMatrix& rho, const Gate& g);
void apply_unitary(DensityMatrix& rho, const Matrix& u);

// In-place rho -> sum_k K rho K^dag.
void apply_channel(DensityMatrix& rho, const KrausChannel& channel);

// Appends `count` fresh |0> qubits after the existing ones.
DensityMatrix extend_with_ancilla(const DensityMatrix& rho, int count);

// Traces out every qubit not listed in `keep` (strictly ascending indices);
// kept qubits retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// tr(rho H) for a diagonal observable H given by its diagonal.
double expectation(const DensityMatrix& rho, const Eigen::VectorXd& diagonal);

// Full-dimension matrix of a gate on num_qubits qubits.  `angle` overrides a
// slot-bound rotation; pass the literal angle for fixed-angle gates.
Matrix gate_matrix(const Gate& g, int num_qubits);
Matrix gate_matrix(const Gate& g, int num_qubits, double angle);

// Statevector kernels (the optimiser's hot path).  `angle` is the resolved
// rotation angle; it is ignored for fixed gates.
void apply_gate_vec(Vector& v, const Gate& g, int num_qubits, double angle);
void apply_gate_vec_adjoint(Vector& v, const Gate& g, int num_qubits, double angle);

// v -> P v for a Pauli string (used by analytic gradient accumulation).
void apply_pauli_string(Vector& v, const PauliString& generator, int num_qubits);

}  // namespace vqec

#endif  // VQEC_QSIM_HPP
