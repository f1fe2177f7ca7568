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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "ansatz.hpp"
#include "cost.hpp"
#include "noise.hpp"
#include "qsim.hpp"

using namespace vqec;
constexpr double kPi = std::numbers::pi;

namespace {

Eigen::VectorXd random_params(int count, std::mt19937_64& rng) {
  Eigen::VectorXd out(count);
  for (int i = 0; i < count; ++i) out(i) = ((rng() >> 11) * 0x1.0p-53) * 2 * kPi;
  return out;
}

PipelineSpec default_pipeline(NoiseKind kind, double p) {
  AnsatzSpec aspec;
  aspec.layout = {1, 2, 2};
  NoiseSpec noise;
  noise.kind = kind;
  noise.p = p;
  return make_pipeline(aspec, noise);
}

}  // namespace

TEST_CASE("cost hamiltonian diagonals and degeneracies") {
  CostHamiltonian fid = CostHamiltonian::fidelity(3);
  CHECK(fid.diagonal(0) == 0.0);
  for (int b = 1; b < 8; ++b) CHECK(fid.diagonal(b) == 1.0);

  CostHamiltonian wass = CostHamiltonian::wasserstein(3);
  for (int b = 0; b < 8; ++b)
    CHECK(wass.diagonal(b) == static_cast<double>(std::popcount(static_cast<unsigned>(b))));
  // Eigenvalue j appears with binomial multiplicity.
  int counts[4] = {0, 0, 0, 0};
  for (int b = 0; b < 8; ++b) ++counts[static_cast<int>(wass.diagonal(b))];
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 3);
  CHECK(counts[2] == 3);
  CHECK(counts[3] == 1);

  CostHamiltonian full = CostHamiltonian::full_weighted(3);
  CHECK(full.diagonal(0) == 0.0);
  CHECK(full.diagonal(0b100) == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(1e-15));
  CHECK(full.diagonal(0b010) == doctest::Approx(1.0 + 2.0 / 3.0).epsilon(1e-15));
  CHECK(full.diagonal(0b001) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(full.diagonal(0b111) == doctest::Approx(5.0).epsilon(1e-15));
  // All subset sums distinct: orderings of different error patterns survive.
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      CHECK(std::abs(full.diagonal(a) - full.diagonal(b)) > 1e-9);

  for (const CostHamiltonian* h : {&fid, &wass, &full}) {
    h->validate();
    int zeros = 0;
    for (int b = 0; b < 8; ++b)
      if (h->diagonal(b) == 0.0) ++zeros;
    CHECK(zeros == 1);  // unique ground state |0...0>
  }

  CHECK(cost_kind_from_string("fid") == CostHamiltonian::Kind::Fid);
  CHECK(cost_kind_from_string("wass") == CostHamiltonian::Kind::Wass);
  CHECK(cost_kind_from_string("full") == CostHamiltonian::Kind::Full);
  CHECK_THROWS_AS(cost_kind_from_string("hinge"), std::invalid_argument);
}

TEST_CASE("identity pipeline without noise returns the logical state exactly") {
  PipelineSpec spec = default_pipeline(NoiseKind::PhaseFlip, 0.0);
  Evaluator eval(spec);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(spec.encoder.num_params);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(spec.recovery.num_params);
  DensityMatrix out = eval.averaged_output_state(alpha, beta);
  DensityMatrix want = pure_state(3, 0);
  CHECK((out.mat - want.mat).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(eval.average_fidelity(alpha, beta) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval.cost(alpha, beta, CostHamiltonian::wasserstein(3)) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("fast evaluation matches the density-matrix reference route") {
  std::mt19937_64 rng(240811);
  for (NoiseKind kind : {NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::YFlip}) {
    PipelineSpec spec = default_pipeline(kind, 0.37);
    Evaluator eval(spec);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd alpha = random_params(spec.encoder.num_params, rng);
      Eigen::VectorXd beta = random_params(spec.recovery.num_params, rng);
      for (const CostHamiltonian& h :
           {CostHamiltonian::fidelity(3), CostHamiltonian::wasserstein(3),
            CostHamiltonian::full_weighted(3)}) {
        double fast = eval.cost(alpha, beta, h);
        double ref = eval.cost_reference(alpha, beta, h);
        CHECK(fast == doctest::Approx(ref).epsilon(1e-10));
      }
      DensityMatrix out = eval.averaged_output_state(alpha, beta);
      CHECK(std::abs(out.mat.trace().real() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(out.mat);
      CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }
  }
}

TEST_CASE("fidelity cost is one minus the average fidelity") {
  std::mt19937_64 rng(10247);
  PipelineSpec spec = default_pipeline(NoiseKind::PhaseFlip, 0.8);
  Evaluator eval(spec);
  CostHamiltonian fid = CostHamiltonian::fidelity(3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd alpha = random_params(spec.encoder.num_params, rng);
    Eigen::VectorXd beta = random_params(spec.recovery.num_params, rng);
    double f = eval.average_fidelity(alpha, beta);
    double c = eval.cost(alpha, beta, fid);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(c + f == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hamming cost dominates the fidelity cost") {
  std::mt19937_64 rng(777001);
  PipelineSpec spec = default_pipeline(NoiseKind::BitFlip, 0.6);
  Evaluator eval(spec);
  CostHamiltonian fid = CostHamiltonian::fidelity(3);
  CostHamiltonian wass = CostHamiltonian::wasserstein(3);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd alpha = random_params(spec.encoder.num_params, rng);
    Eigen::VectorXd beta = random_params(spec.recovery.num_params, rng);
    double cf = eval.cost(alpha, beta, fid);
    double cw = eval.cost(alpha, beta, wass);
    if (cf > cw + 1e-12) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("closed-form code parameters drive the pipeline to fidelity one") {
  AnsatzSpec aspec;
  aspec.layout = {1, 2, 2};
  aspec.layers = kExactCodeLayers;
  for (NoiseKind kind : {NoiseKind::BitFlip, NoiseKind::PhaseFlip}) {
    ExactCodeParams p = exact_code_params(aspec, kind);
    for (double strength : {0.4, 0.8}) {
      NoiseSpec noise;
      noise.kind = kind;
      noise.p = strength;
      Evaluator eval(make_pipeline(aspec, noise));
      CHECK(eval.average_fidelity(p.alpha, p.beta) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(eval.cost(p.alpha, p.beta, CostHamiltonian::fidelity(3)) <= 1e-9);
      CHECK(eval.cost(p.alpha, p.beta, CostHamiltonian::wasserstein(3)) <= 1e-9);
      // The reference route agrees.
      CHECK(eval.cost_reference(p.alpha, p.beta, CostHamiltonian::fidelity(3)) <= 1e-9);
    }
  }
}

TEST_CASE("frozen no-correction baselines at p = 0.8") {
  QubitLayout layout{1, 2, 2};
  NoiseSpec phase{NoiseKind::PhaseFlip, 0.8};
  NoiseSpec bit{NoiseKind::BitFlip, 0.8};
  // 37/45 and 13/45 exactly.
  CHECK(baseline_f0(phase, layout) == doctest::Approx(37.0 / 45.0).epsilon(1e-12));
  CHECK(baseline_f0(bit, layout) == doctest::Approx(13.0 / 45.0).epsilon(1e-12));
  CHECK(baseline_f0_strong(phase, layout) == doctest::Approx(37.0 / 45.0).epsilon(1e-12));
  CHECK(baseline_f0_strong(bit, layout) == doctest::Approx(37.0 / 45.0).epsilon(1e-12));
  // Five-digit rounded values.
  CHECK(baseline_f0(phase, layout) == doctest::Approx(0.82222).epsilon(1e-5));
  CHECK(baseline_f0(bit, layout) == doctest::Approx(0.28889).epsilon(1e-5));
}

TEST_CASE("pipeline baselines agree with the closed forms on a strength grid") {
  QubitLayout layout{1, 2, 2};
  for (NoiseKind kind : {NoiseKind::BitFlip, NoiseKind::PhaseFlip}) {
    for (double p : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      NoiseSpec noise{kind, p};
      double pipeline = baseline_f0(noise, layout);
      double closed = baseline_f0_closed(noise, layout);
      CHECK(pipeline == doctest::Approx(closed).epsilon(1e-12));
      double strong_pipeline = baseline_f0_strong(noise, layout);
      double strong_closed = baseline_f0_strong_closed(noise, layout);
      CHECK(strong_pipeline == doctest::Approx(strong_closed).epsilon(1e-12));
    }
  }
}

TEST_CASE("weak and strong baselines satisfy the exchange identity") {
  // f0 = f0_strong - ((n-1)/n) p (1 - |<0|sigma|0>|^2), |<0|sigma|0>|^2 being
  // 1 for the phase axis and 0 otherwise.
  QubitLayout layout{1, 2, 2};
  const int n = layout.n();
  for (NoiseKind kind : {NoiseKind::BitFlip, NoiseKind::PhaseFlip}) {
    double z = (kind == NoiseKind::PhaseFlip) ? 1.0 : 0.0;
    for (double p : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      NoiseSpec noise{kind, p};
      double lhs = baseline_f0(noise, layout);
      double rhs = baseline_f0_strong(noise, layout) -
                   (static_cast<double>(n - 1) / n) * p * (1.0 - z);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("evaluation counter counts fresh pipeline evaluations only") {
  std::mt19937_64 rng(5150);
  PipelineSpec spec = default_pipeline(NoiseKind::PhaseFlip, 0.8);
  Evaluator eval(spec);
  Eigen::VectorXd alpha = random_params(spec.encoder.num_params, rng);
  Eigen::VectorXd beta = random_params(spec.recovery.num_params, rng);
  CostHamiltonian fid = CostHamiltonian::fidelity(3);
  CostHamiltonian wass = CostHamiltonian::wasserstein(3);
  CHECK(eval.evaluation_count() == 0);
  eval.cost(alpha, beta, fid);
  CHECK(eval.evaluation_count() == 1);
  eval.cost(alpha, beta, wass);  // same parameters: cached
  CHECK(eval.evaluation_count() == 1);
  eval.average_fidelity(alpha, beta);
  CHECK(eval.evaluation_count() == 1);
  beta(0) += 0.25;
  eval.cost(alpha, beta, fid);
  CHECK(eval.evaluation_count() == 2);
  eval.reset_evaluation_count();
  CHECK(eval.evaluation_count() == 0);
}

TEST_CASE("pipeline validation rejects inconsistent shapes") {
  PipelineSpec spec = default_pipeline(NoiseKind::BitFlip, 0.5);
  PipelineSpec wrong = spec;
  wrong.encoder.num_qubits = 2;
  CHECK_THROWS_AS(wrong.validate(), std::invalid_argument);
  PipelineSpec multi = spec;
  multi.layout.k = 2;
  CHECK_THROWS_AS(multi.validate(), std::invalid_argument);
  NoiseSpec bad{NoiseKind::BitFlip, 1.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  // Parameter length mismatches surface as errors.
  Evaluator eval(spec);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(spec.encoder.num_params + 1);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(spec.recovery.num_params);
  CHECK_THROWS_AS(eval.cost(alpha, beta, CostHamiltonian::fidelity(3)),
                  std::invalid_argument);
}
