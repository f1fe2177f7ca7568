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

#ifndef VQEC_ANSATZ_HPP
#define VQEC_ANSATZ_HPP

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "noise.hpp"
#include "qsim.hpp"

namespace vqec {

// An ordered gate list over a parameter vector; gates[i] applies before
// gates[i+1].  Every parameter slot is bound to exactly one rotation gate, so
// shifting one parameter shifts exactly one gate.
struct ParametricCircuit {
  int num_qubits = 0;
  int num_params = 0;
  std::vector<Gate> gates;

  void validate() const;  // slot <-> gate bijection, qubit bounds
  Matrix matrix(const Eigen::VectorXd& params) const;
  void apply(Vector& v, const Eigen::VectorXd& params) const;
  void apply_adjoint(Vector& v, const Eigen::VectorXd& params) const;
};

// Layered: each layer is an Euler triple on every qubit followed by a
// directed ring of two-qubit couplers exp(-i theta Z_q X_{q+1}) over adjacent
// qubits (indices mod the register size), edges in ascending order.
// Dense: each layer is one rotation per non-identity Pauli string on the
// register (4^size - 1 slots), strings enumerated with qubit 0 as the most
// significant base-4 digit (I, X, Y, Z).  Maximally expressive; used for
// landscape studies where the parameter count should scale with the full
// operator algebra rather than the circuit depth.
enum class StructureKind { Layered, Dense };

StructureKind structure_from_string(const std::string& name);
std::string to_string(StructureKind kind);

// Both circuits share one recipe (see StructureKind); `layers` counts recipe
// repetitions for each circuit.
struct AnsatzSpec {
  QubitLayout layout;
  int layers = 2;
  StructureKind structure = StructureKind::Layered;

  void validate() const;
};

// Parameter-slot bookkeeping for the layered structure.  Triples are
// (z, y, z) Euler slots per qubit; ring entries index the two-qubit coupler
// on edge (q, q+1 mod size) by layer.
struct SlotMap {
  std::vector<std::vector<std::array<int, 3>>> v_triples;  // [layer][qubit]
  std::vector<std::vector<int>> v_ring;                    // [layer][edge]
  std::vector<std::vector<std::array<int, 3>>> w_triples;  // [layer][qubit]
  std::vector<std::vector<int>> w_ring;                    // [layer][edge]
};

struct Ansatz {
  AnsatzSpec spec;
  ParametricCircuit encoder;   // acts on the n data qubits
  ParametricCircuit recovery;  // acts on all n + r qubits
  SlotMap slots;
};

Ansatz build_ansatz(const AnsatzSpec& spec);

// The six single-qubit gates averaged over when twirling the logical input,
// in fixed order: I, X, exp(+-i pi/4 X), exp(+-i pi/4 Y).  Applied to |0>
// they produce the six single-qubit stabilizer states.
std::vector<Eigen::Matrix2cd> two_design_gates();

// Euler angles (alpha, beta, gamma) with u ~ Rz(gamma) Ry(beta) Rz(alpha) up
// to global phase, where Rz(t) = exp(-i t Z), Ry(t) = exp(-i t Y) and alpha
// applies first.
std::array<double, 3> zyz_angles(const Eigen::Matrix2cd& u);

struct ExactCodeParams {
  Eigen::VectorXd alpha;  // encoder parameters
  Eigen::VectorXd beta;   // recovery parameters
};

// Smallest layer count at which exact_code_params has a recovery assignment.
inline constexpr int kExactCodeLayers = 5;

// Parameter assignment that turns the (1, 2, 2) layered ansatz into the
// three-qubit repetition code (flip basis for bit-flip noise, sign basis for
// phase-flip noise) together with a recovery that restores every single-qubit
// error branch exactly, so the full pipeline reaches average fidelity 1 at
// every noise strength.  The encoder block is in closed form; the recovery
// block is a solved angle table recorded to machine precision.  Requires
// spec.layers >= kExactCodeLayers (extra layers stay at zero angles).  Throws
// when the layout, depth, or noise kind has no known assignment.
ExactCodeParams exact_code_params(const AnsatzSpec& spec, NoiseKind kind);

nlohmann::json circuit_to_json(const ParametricCircuit& circuit);

}  // namespace vqec

#endif  // VQEC_ANSATZ_HPP
