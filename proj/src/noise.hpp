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

#ifndef VQEC_NOISE_HPP
#define VQEC_NOISE_HPP

#include <string>

#include "qsim.hpp"

namespace vqec {

// Single-axis flip noise: with probability 1 - p nothing happens; with
// probability p a uniformly chosen qubit suffers the kind's Pauli flip.
enum class NoiseKind { BitFlip, PhaseFlip, YFlip };

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);
Pauli noise_pauli(NoiseKind kind);

// Kraus family sqrt(1 - p) I plus sqrt(p / n) sigma_q for each qubit q.
KrausChannel build_noise_channel(NoiseKind kind, double probability, int num_qubits);

}  // namespace vqec

#endif  // VQEC_NOISE_HPP
