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

#include "noise.hpp"

#include <cmath>

namespace vqec {

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "bit_flip") return NoiseKind::BitFlip;
  if (name == "phase_flip") return NoiseKind::PhaseFlip;
  if (name == "y_flip") return NoiseKind::YFlip;
  throw std::invalid_argument("unknown noise kind: " + name);
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::BitFlip: return "bit_flip";
    case NoiseKind::PhaseFlip: return "phase_flip";
    case NoiseKind::YFlip: return "y_flip";
  }
  throw std::invalid_argument("unknown noise kind");
}

Pauli noise_pauli(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::BitFlip: return Pauli::X;
    case NoiseKind::PhaseFlip: return Pauli::Z;
    case NoiseKind::YFlip: return Pauli::Y;
  }
  throw std::invalid_argument("unknown noise kind");
}

KrausChannel build_noise_channel(NoiseKind kind, double probability, int num_qubits) {
  if (!(probability >= 0.0 && probability <= 1.0))
    throw std::invalid_argument("noise probability must lie in [0, 1]");
  if (num_qubits < 1)
    throw std::invalid_argument("noise channel needs at least one qubit");
  KrausChannel ch;
  ch.num_qubits = num_qubits;
  const int dim = 1 << num_qubits;
  ch.kraus.push_back(std::sqrt(1.0 - probability) * Matrix::Identity(dim, dim));
  const double amp = std::sqrt(probability / num_qubits);
  const Pauli axis = noise_pauli(kind);
  for (int q = 0; q < num_qubits; ++q) {
    Gate flip = Gate::fixed(q, pauli_matrix(axis));
    ch.kraus.push_back(amp * gate_matrix(flip, num_qubits));
  }
  return ch;
}

}  // namespace vqec
