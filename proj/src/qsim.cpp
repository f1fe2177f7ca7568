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

#include "qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace vqec {

namespace {

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("qubit count must be between 1 and " +
                                std::to_string(kMaxQubits));
}

int bit_position(int num_qubits, int qubit) { return num_qubits - 1 - qubit; }

void check_gate_bounds(const Gate& g, int num_qubits) {
  if (g.kind == Gate::Kind::Fixed) {
    if (g.target < 0 || g.target >= num_qubits)
      throw std::invalid_argument("gate target out of range");
    for (const Control& c : g.controls) {
      if (c.qubit < 0 || c.qubit >= num_qubits)
        throw std::invalid_argument("control qubit out of range");
      if (c.qubit == g.target)
        throw std::invalid_argument("control qubit equals the target");
    }
  } else {
    for (const auto& [q, p] : g.generator) {
      (void)p;
      if (q < 0 || q >= num_qubits)
        throw std::invalid_argument("generator qubit out of range");
    }
  }
}

double resolved_angle(const Gate& g) {
  if (g.parametric())
    throw std::invalid_argument("slot-bound rotation needs an explicit angle");
  return g.angle;
}

// Bit masks and per-factor data for applying a Pauli string.
struct StringPlan {
  std::uint32_t flip = 0;    // X and Y factors toggle these bits
  std::uint32_t z_mask = 0;  // Z and Y factors contribute (-1)^bit
  int y_count = 0;           // each Y contributes a leading factor i
};

StringPlan plan_string(const PauliString& gen, int num_qubits) {
  StringPlan plan;
  for (const auto& [q, p] : gen) {
    std::uint32_t bit = 1u << bit_position(num_qubits, q);
    switch (p) {
      case Pauli::X:
        plan.flip |= bit;
        break;
      case Pauli::Y:
        plan.flip |= bit;
        plan.z_mask |= bit;
        ++plan.y_count;
        break;
      case Pauli::Z:
        plan.z_mask |= bit;
        break;
    }
  }
  return plan;
}

// Phase picked up when P maps |i> to |i ^ flip>.
Complex string_phase(const StringPlan& plan, std::uint32_t i) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int sign_bits = std::popcount(i & plan.z_mask);
  Complex ph = kIPow[plan.y_count & 3];
  return (sign_bits & 1) ? -ph : ph;
}

void apply_rotation_vec(Vector& v, const Gate& g, int num_qubits, double angle) {
  const StringPlan plan = plan_string(g.generator, num_qubits);
  const std::uint32_t dim = 1u << num_qubits;
  const double c = std::cos(angle);
  const Complex ms(0, -std::sin(angle));
  if (plan.flip == 0) {
    // Pure Z string: diagonal action exp(-i * angle * (+/-1)).
    for (std::uint32_t i = 0; i < dim; ++i) v(i) = (c + ms * string_phase(plan, i)) * v(i);
    return;
  }
  for (std::uint32_t i = 0; i < dim; ++i) {
    const std::uint32_t j = i ^ plan.flip;
    if (j < i) continue;
    const Complex a = v(i);
    const Complex b = v(j);
    v(j) = c * b + ms * string_phase(plan, i) * a;
    v(i) = c * a + ms * string_phase(plan, j) * b;
  }
}

void apply_fixed_vec(Vector& v, const Gate& g, int num_qubits,
                     const Eigen::Matrix2cd& u) {
  const std::uint32_t dim = 1u << num_qubits;
  const std::uint32_t stride = 1u << bit_position(num_qubits, g.target);
  std::uint32_t ctrl_mask = 0;
  std::uint32_t ctrl_want = 0;
  for (const Control& c : g.controls) {
    std::uint32_t bit = 1u << bit_position(num_qubits, c.qubit);
    ctrl_mask |= bit;
    if (c.on_one) ctrl_want |= bit;
  }
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (i & stride) continue;
    if ((i & ctrl_mask) != ctrl_want) continue;
    const Complex a = v(i);
    const Complex b = v(i | stride);
    v(i) = u(0, 0) * a + u(0, 1) * b;
    v(i | stride) = u(1, 0) * a + u(1, 1) * b;
  }
}

}  // namespace

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  const Complex i(0, 1);
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

void QubitLayout::validate() const {
  if (k < 1) throw std::invalid_argument("layout needs at least one logical qubit");
  if (n_minus_k < 0 || r < 0)
    throw std::invalid_argument("ancilla counts cannot be negative");
  if (total() > kMaxQubits)
    throw std::invalid_argument("layout exceeds the " + std::to_string(kMaxQubits) +
                                "-qubit simulator limit");
}

Gate Gate::fixed(int target, const Eigen::Matrix2cd& u, std::vector<Control> controls) {
  for (size_t a = 0; a < controls.size(); ++a) {
    if (controls[a].qubit == target)
      throw std::invalid_argument("control qubit equals the target");
    for (size_t b = a + 1; b < controls.size(); ++b)
      if (controls[a].qubit == controls[b].qubit)
        throw std::invalid_argument("duplicate control qubit");
  }
  Gate g;
  g.kind = Kind::Fixed;
  g.target = target;
  g.u = u;
  g.controls = std::move(controls);
  return g;
}

namespace {

Gate make_rotation(PauliString generator, double angle, int slot) {
  if (generator.empty())
    throw std::invalid_argument("rotation generator cannot be empty");
  for (size_t a = 0; a < generator.size(); ++a)
    for (size_t b = a + 1; b < generator.size(); ++b)
      if (generator[a].first == generator[b].first)
        throw std::invalid_argument("duplicate qubit in rotation generator");
  Gate g;
  g.kind = Gate::Kind::Rotation;
  g.generator = std::move(generator);
  g.angle = angle;
  g.slot = slot;
  return g;
}

}  // namespace

Gate Gate::rotation(PauliString generator, double angle) {
  return make_rotation(std::move(generator), angle, -1);
}

Gate Gate::rotation_slot(PauliString generator, int slot) {
  if (slot < 0) throw std::invalid_argument("parameter slot must be non-negative");
  return make_rotation(std::move(generator), 0.0, slot);
}

DensityMatrix pure_state(int num_qubits, std::uint32_t basis_index) {
  check_qubit_count(num_qubits);
  const int dim = 1 << num_qubits;
  if (basis_index >= static_cast<std::uint32_t>(dim))
    throw std::invalid_argument("basis index out of range");
  DensityMatrix rho;
  rho.num_qubits = num_qubits;
  rho.mat = Matrix::Zero(dim, dim);
  rho.mat(basis_index, basis_index) = 1.0;
  return rho;
}

void apply_unitary(DensityMatrix& rho, const Gate& g) {
  const Matrix u = gate_matrix(g, rho.num_qubits, resolved_angle(g));
  rho.mat = u * rho.mat * u.adjoint();
}

void apply_unitary(DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw std::invalid_argument("unitary dimension mismatch");
  rho.mat = u * rho.mat * u.adjoint();
}

void apply_channel(DensityMatrix& rho, const KrausChannel& channel) {
  if (channel.num_qubits != rho.num_qubits)
    throw std::invalid_argument("channel and state qubit counts differ");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& k : channel.kraus) out.noalias() += k * rho.mat * k.adjoint();
  rho.mat = std::move(out);
}

void KrausChannel::validate(double tol) const {
  check_qubit_count(num_qubits);
  const int dim = 1 << num_qubits;
  if (kraus.empty()) throw std::invalid_argument("channel has no Kraus operators");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim)
      throw std::invalid_argument("Kraus operator dimension mismatch");
    sum.noalias() += k.adjoint() * k;
  }
  const double defect = (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > tol)
    throw std::invalid_argument("Kraus completeness violated by " + std::to_string(defect));
}

DensityMatrix extend_with_ancilla(const DensityMatrix& rho, int count) {
  if (count < 0) throw std::invalid_argument("ancilla count cannot be negative");
  check_qubit_count(rho.num_qubits + count);
  DensityMatrix out;
  out.num_qubits = rho.num_qubits + count;
  out.mat = Matrix::Zero(out.dim(), out.dim());
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j) out.mat(i << count, j << count) = rho.mat(i, j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("must keep at least one qubit");
  for (size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] < 0 || keep[a] >= rho.num_qubits)
      throw std::invalid_argument("kept qubit out of range");
    if (a > 0 && keep[a] <= keep[a - 1])
      throw std::invalid_argument("kept qubits must be strictly ascending");
  }
  const int nk = static_cast<int>(keep.size());
  const int nt = rho.num_qubits - nk;
  std::vector<int> traced;
  for (int q = 0; q < rho.num_qubits; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);

  // Scatter a compact sub-register value onto the full index bits.
  auto scatter = [&](const std::vector<int>& qubits, int value) {
    std::uint32_t idx = 0;
    const int m = static_cast<int>(qubits.size());
    for (int a = 0; a < m; ++a)
      if (value >> (m - 1 - a) & 1)
        idx |= 1u << bit_position(rho.num_qubits, qubits[a]);
    return idx;
  };

  DensityMatrix out;
  out.num_qubits = nk;
  out.mat = Matrix::Zero(1 << nk, 1 << nk);
  for (int r = 0; r < (1 << nk); ++r) {
    const std::uint32_t rbase = scatter(keep, r);
    for (int c = 0; c < (1 << nk); ++c) {
      const std::uint32_t cbase = scatter(keep, c);
      Complex acc(0, 0);
      for (int t = 0; t < (1 << nt); ++t) {
        const std::uint32_t off = scatter(traced, t);
        acc += rho.mat(rbase | off, cbase | off);
      }
      out.mat(r, c) = acc;
    }
  }
  return out;
}

double expectation(const DensityMatrix& rho, const Eigen::VectorXd& diagonal) {
  if (diagonal.size() != rho.dim())
    throw std::invalid_argument("observable dimension mismatch");
  double acc = 0;
  for (int i = 0; i < rho.dim(); ++i) acc += diagonal(i) * rho.mat(i, i).real();
  return acc;
}

Matrix gate_matrix(const Gate& g, int num_qubits) {
  return gate_matrix(g, num_qubits, resolved_angle(g));
}

Matrix gate_matrix(const Gate& g, int num_qubits, double angle) {
  check_qubit_count(num_qubits);
  const int dim = 1 << num_qubits;
  Matrix u(dim, dim);
  Vector col(dim);
  for (int c = 0; c < dim; ++c) {
    col.setZero();
    col(c) = 1.0;
    apply_gate_vec(col, g, num_qubits, angle);
    u.col(c) = col;
  }
  return u;
}

void apply_gate_vec(Vector& v, const Gate& g, int num_qubits, double angle) {
  check_gate_bounds(g, num_qubits);
  if (g.kind == Gate::Kind::Rotation) {
    apply_rotation_vec(v, g, num_qubits, angle);
  } else {
    apply_fixed_vec(v, g, num_qubits, g.u);
  }
}

void apply_gate_vec_adjoint(Vector& v, const Gate& g, int num_qubits, double angle) {
  check_gate_bounds(g, num_qubits);
  if (g.kind == Gate::Kind::Rotation) {
    apply_rotation_vec(v, g, num_qubits, -angle);
  } else {
    apply_fixed_vec(v, g, num_qubits, g.u.adjoint());
  }
}

void apply_pauli_string(Vector& v, const PauliString& generator, int num_qubits) {
  Gate probe = Gate::rotation(generator, 0.0);
  check_gate_bounds(probe, num_qubits);
  const StringPlan plan = plan_string(generator, num_qubits);
  const std::uint32_t dim = 1u << num_qubits;
  if (plan.flip == 0) {
    for (std::uint32_t i = 0; i < dim; ++i) v(i) *= string_phase(plan, i);
    return;
  }
  for (std::uint32_t i = 0; i < dim; ++i) {
    const std::uint32_t j = i ^ plan.flip;
    if (j < i) continue;
    const Complex a = v(i);
    const Complex b = v(j);
    v(j) = string_phase(plan, i) * a;
    v(i) = string_phase(plan, j) * b;
  }
}

}  // namespace vqec
