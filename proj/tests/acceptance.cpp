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

// Acceptance gate.  Prints exactly one line per criterion:
//   CRITERION k: PASS — details
//   CRITERION k: FAIL — details
// and exits 0 iff every selected criterion passed.
//
// Usage: acceptance [all|core|separation|two_stage]
//   core        criteria 1, 2, 3, 4, 7, 8 (fast, deterministic)
//   separation  criterion 5 (two 200-restart batches; long)
//   two_stage   criterion 6 (two 100-run two-stage batches; long)
//   all         everything in order (default)

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ansatz.hpp"
#include "cost.hpp"
#include "experiment.hpp"
#include "gradopt.hpp"
#include "noise.hpp"
#include "qsim.hpp"
#include "rng.hpp"

namespace {

using namespace vqec;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[2048];
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return std::string(buffer);
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// ---------------------------------------------------------------------------
// Criterion 1: the reported do-nothing fidelity for phase-flip noise at
// p = 0.8 equals the closed form (1-p) + (p/3)(1/3 + 2) within 1e-6; the
// value rounds to 0.82222.  Runtime < 1 s.
Outcome criterion_1() {
  auto start = std::chrono::steady_clock::now();
  const double p = 0.8;
  NoiseSpec noise{NoiseKind::PhaseFlip, p};
  BaselineReport report = report_baselines(noise, QubitLayout{});
  const double closed = (1.0 - p) + (p / 3.0) * (1.0 / 3.0 + 2.0);
  const double diff = std::abs(report.f0 - closed);
  const double elapsed = seconds_since(start);
  bool pass = diff <= 1e-6 && elapsed < 1.0;
  return {pass, fmt("baseline f0 = %.9f, closed form (1-p)+(p/3)(1/3+2) = %.9f "
                    "(rounds to 0.82222), |diff| = %.2e <= 1e-6, %.2f s",
                    report.f0, closed, diff, elapsed)};
}

// ---------------------------------------------------------------------------
// Criterion 2: weak/strong baseline identity
// f0 = f0_strong - ((n-1)/n) p (1 - |<0|sigma|0>|^2) within 1e-12 for both
// noise kinds across p in {0, 0.2, 0.4, 0.6, 0.8, 1.0}.  Runtime < 1 s.
Outcome criterion_2() {
  auto start = std::chrono::steady_clock::now();
  QubitLayout layout;
  const int n = layout.n();
  double worst = 0.0;
  for (NoiseKind kind : {NoiseKind::BitFlip, NoiseKind::PhaseFlip}) {
    Eigen::Matrix2cd sigma = pauli_matrix(noise_pauli(kind));
    const double s00 = std::norm(sigma(0, 0));
    for (double p : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      NoiseSpec noise{kind, p};
      const double f0 = baseline_f0(noise, layout);
      const double f0_strong = baseline_f0_strong(noise, layout);
      const double rhs =
          f0_strong - (double(n - 1) / n) * p * (1.0 - s00);
      worst = std::max(worst, std::abs(f0 - rhs));
    }
  }
  const double elapsed = seconds_since(start);
  bool pass = worst <= 1e-12 && elapsed < 1.0;
  return {pass, fmt("identity residual over both noise kinds at 6 noise "
                    "strengths: worst |f0 - rhs| = %.2e <= 1e-12, %.2f s",
                    worst, elapsed)};
}

// ---------------------------------------------------------------------------
// Criterion 3: the exact-code parameter assignment reaches average fidelity 1
// within 1e-9 and drives both costs to 0 within 1e-9 for bit-flip and
// phase-flip noise at p in {0.4, 0.8}.  Runtime < 1 s.
Outcome criterion_3() {
  auto start = std::chrono::steady_clock::now();
  double worst_f = 0.0;
  double worst_cfid = 0.0;
  double worst_cwass = 0.0;
  for (NoiseKind kind : {NoiseKind::BitFlip, NoiseKind::PhaseFlip}) {
    AnsatzSpec spec{QubitLayout{}, kExactCodeLayers, StructureKind::Layered};
    ExactCodeParams params = exact_code_params(spec, kind);
    for (double p : {0.4, 0.8}) {
      Evaluator eval(make_pipeline(spec, NoiseSpec{kind, p}));
      const int n = spec.layout.n();
      worst_f = std::max(
          worst_f,
          std::abs(eval.average_fidelity(params.alpha, params.beta) - 1.0));
      worst_cfid = std::max(worst_cfid,
                            std::abs(eval.cost(params.alpha, params.beta,
                                               CostHamiltonian::fidelity(n))));
      worst_cwass =
          std::max(worst_cwass,
                   std::abs(eval.cost(params.alpha, params.beta,
                                      CostHamiltonian::wasserstein(n))));
    }
  }
  const double elapsed = seconds_since(start);
  bool pass = worst_f <= 1e-9 && worst_cfid <= 1e-9 && worst_cwass <= 1e-9 &&
              elapsed < 1.0;
  return {pass,
          fmt("worst |F - 1| = %.2e, worst C_fid = %.2e, worst C_wass = %.2e, "
              "all <= 1e-9 over {bit_flip, phase_flip} x p in {0.4, 0.8}, "
              "%.2f s",
              worst_f, worst_cfid, worst_cwass, elapsed)};
}

// ---------------------------------------------------------------------------
// Criterion 4: parameter-shift gradients (2-term recovery rule, 4-term
// encoder rule) match central finite differences (step 1e-5) within 1e-6 on
// 100 random points covering both cost kinds, and the evaluation counters
// record exactly 2 (recovery) and 4 (encoder) pipeline calls per component.
// Runtime < 1 min.
Outcome criterion_4() {
  auto start = std::chrono::steady_clock::now();
  AnsatzSpec spec{QubitLayout{}, 1, StructureKind::Layered};
  NoiseSpec noise{NoiseKind::PhaseFlip, 0.8};
  const int n = spec.layout.n();

  PipelineObjective fid_obj(make_pipeline(spec, noise),
                            CostHamiltonian::fidelity(n));
  PipelineObjective wass_obj(make_pipeline(spec, noise),
                             CostHamiltonian::wasserstein(n));

  const int num_points = 100;
  const double h = 1e-5;
  double worst = 0.0;
  bool counters_ok = true;
  SplitMix64 rng{20260822ULL};

  for (int point = 0; point < num_points; ++point) {
    Eigen::VectorXd alpha(fid_obj.num_alpha());
    Eigen::VectorXd beta(fid_obj.num_beta());
    for (int j = 0; j < alpha.size(); ++j)
      alpha[j] = 2.0 * M_PI * rng.uniform01();
    for (int j = 0; j < beta.size(); ++j) beta[j] = 2.0 * M_PI * rng.uniform01();

    for (PipelineObjective* obj : {&fid_obj, &wass_obj}) {
      // Shift-rule gradient with the advertised evaluation budget.
      std::uint64_t before = obj->evaluation_count();
      Eigen::VectorXd ga(alpha.size()), gb(beta.size());
      gradient_shift(*obj, alpha, beta, ga, gb);
      std::uint64_t sweep = obj->evaluation_count() - before;
      counters_ok = counters_ok &&
                    sweep == std::uint64_t(4 * alpha.size() + 2 * beta.size());

      // Per-component budgets, checked explicitly on the first two points.
      if (point < 2) {
        before = obj->evaluation_count();
        (void)grad_beta(*obj, alpha, beta, 0);
        counters_ok = counters_ok && obj->evaluation_count() - before == 2;
        before = obj->evaluation_count();
        (void)grad_alpha(*obj, alpha, beta, 0);
        counters_ok = counters_ok && obj->evaluation_count() - before == 4;
      }

      // Central finite differences.
      for (int j = 0; j < alpha.size(); ++j) {
        Eigen::VectorXd ap = alpha, am = alpha;
        ap[j] += h;
        am[j] -= h;
        double fd = (obj->cost(ap, beta) - obj->cost(am, beta)) / (2.0 * h);
        worst = std::max(worst, std::abs(ga[j] - fd));
      }
      for (int j = 0; j < beta.size(); ++j) {
        Eigen::VectorXd bp = beta, bm = beta;
        bp[j] += h;
        bm[j] -= h;
        double fd = (obj->cost(alpha, bp) - obj->cost(alpha, bm)) / (2.0 * h);
        worst = std::max(worst, std::abs(gb[j] - fd));
      }
    }
  }
  const double elapsed = seconds_since(start);
  bool pass = worst <= 1e-6 && counters_ok && elapsed < 60.0;
  return {pass,
          fmt("shift vs central differences (step 1e-5) on %d random points, "
              "both cost kinds at every point: worst |diff| = %.2e <= 1e-6; "
              "per-component pipeline calls %s (2 recovery / 4 encoder), "
              "%.1f s",
              num_points, worst, counters_ok ? "confirmed" : "WRONG", elapsed)};
}

// ---------------------------------------------------------------------------
// Criterion 5: cost-function separation.  200 restarts per cost kind,
// phase-flip p = 0.8, success threshold 0.822: required wass >= 3x fid,
// wass >= 15%, fid <= 15%.  A failing attempt is re-run once with a fresh
// master seed before the verdict.
ExperimentConfig separation_config() {
  ExperimentConfig config;
  config.noise = NoiseSpec{NoiseKind::PhaseFlip, 0.8};
  config.ansatz = AnsatzSpec{QubitLayout{}, 5, StructureKind::Layered};
  config.opt.learning_rate = 0.05;
  config.opt.momentum = 0.9;
  config.opt.max_iters = 2000;
  config.opt.convergence_window = 10;
  config.opt.cost_tolerance = 5e-5;
  config.num_restarts = 200;
  config.threshold_mode = ThresholdMode::Custom;
  config.custom_threshold = 0.822;
  return config;
}

Outcome criterion_5() {
  auto start = std::chrono::steady_clock::now();
  ExperimentConfig config = separation_config();

  auto attempt = [&config](std::uint64_t master_seed) {
    config.master_seed = master_seed;
    BatchSummary wass = run_batch(config, CostHamiltonian::Kind::Wass);
    BatchSummary fid = run_batch(config, CostHamiltonian::Kind::Fid);
    return std::pair<double, double>(wass.success_rate, fid.success_rate);
  };

  auto judge = [](double wass_rate, double fid_rate) {
    return wass_rate >= 3.0 * fid_rate && wass_rate >= 0.15 && fid_rate <= 0.15;
  };

  auto [wass1, fid1] = attempt(20260822ULL);
  bool pass = judge(wass1, fid1);
  std::string detail = fmt(
      "wass %.1f%% vs fid %.1f%% at threshold 0.822 (ratio %.2f; required: "
      "ratio >= 3, wass >= 15%%, fid <= 15%%; 200 restarts each, seed "
      "20260822)",
      100.0 * wass1, 100.0 * fid1, fid1 > 0 ? wass1 / fid1 : INFINITY);
  if (!pass) {
    auto [wass2, fid2] = attempt(20260823ULL);
    pass = judge(wass2, fid2);
    detail += fmt("; fresh-seed retry: wass %.1f%% vs fid %.1f%% (ratio %.2f, "
                  "seed 20260823)",
                  100.0 * wass2, 100.0 * fid2,
                  fid2 > 0 ? wass2 / fid2 : INFINITY);
  }
  detail += fmt(", %.0f s", seconds_since(start));
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// Criterion 6: two-stage asymmetry over 100 runs per direction.  Required:
// wass-then-fid max improvement < 1e-3 and fid-then-wass median improvement
// > 0.05 (negative improvements allowed).  Runtime < 2 h.
Outcome criterion_6() {
  auto start = std::chrono::steady_clock::now();
  ExperimentConfig config;
  config.noise = NoiseSpec{NoiseKind::PhaseFlip, 0.8};
  config.ansatz = AnsatzSpec{QubitLayout{}, 5, StructureKind::Layered};
  config.num_restarts = 100;
  config.master_seed = 20260824ULL;

  TwoStageSummary wass_fid = run_two_stage(config, CostHamiltonian::Kind::Wass,
                                           CostHamiltonian::Kind::Fid);
  TwoStageSummary fid_wass = run_two_stage(config, CostHamiltonian::Kind::Fid,
                                           CostHamiltonian::Kind::Wass);
  const double elapsed = seconds_since(start);
  bool pass = wass_fid.max_improvement < 1e-3 &&
              fid_wass.median_improvement > 0.05 && elapsed < 7200.0;
  return {pass,
          fmt("wass->fid max improvement = %.2e (required < 1e-3); fid->wass "
              "median improvement = %.2e (required > 0.05); 100 runs each, "
              "%.0f s",
              wass_fid.max_improvement, fid_wass.median_improvement, elapsed)};
}

// ---------------------------------------------------------------------------
// Criterion 7: two invocations with an identical configuration and master
// seed produce byte-identical runs.csv.
std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

Outcome criterion_7() {
  auto start = std::chrono::steady_clock::now();
  ExperimentConfig config;
  config.noise = NoiseSpec{NoiseKind::PhaseFlip, 0.8};
  config.ansatz = AnsatzSpec{QubitLayout{}, 1, StructureKind::Layered};
  config.opt.learning_rate = 0.1;
  config.opt.max_iters = 40;
  config.opt.cost_tolerance = 1e-4;
  config.num_restarts = 8;
  config.master_seed = 424242ULL;

  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path() / "vqec_acceptance_determinism";
  fs::remove_all(base);
  std::string copies[2];
  for (int invocation = 0; invocation < 2; ++invocation) {
    config.output_dir = (base / std::to_string(invocation)).string();
    BatchSummary summary = run_batch(config, CostHamiltonian::Kind::Wass);
    write_batch_outputs(config, summary);
    copies[invocation] = read_bytes(fs::path(config.output_dir) / "runs.csv");
  }
  const double elapsed = seconds_since(start);
  bool identical = !copies[0].empty() && copies[0] == copies[1];
  return {identical,
          fmt("two identical invocations (8 restarts, master seed 424242): "
              "runs.csv %s, %zu bytes, %.1f s",
              identical ? "byte-identical" : "DIFFER", copies[0].size(),
              elapsed)};
}

// ---------------------------------------------------------------------------
// Criterion 8: observable spectra.  The fidelity observable's diagonal holds
// one 0 and 2^n - 1 ones; the weight observable's eigenvalue j appears
// C(n, j) times; both have the unique ground state at the all-zeros label.
Outcome criterion_8() {
  auto start = std::chrono::steady_clock::now();
  const int n = QubitLayout{}.n();
  const int dim = 1 << n;

  CostHamiltonian hfid = CostHamiltonian::fidelity(n);
  CostHamiltonian hwass = CostHamiltonian::wasserstein(n);

  int zeros = 0, ones = 0, others = 0;
  for (int i = 0; i < dim; ++i) {
    if (hfid.diagonal[i] == 0.0)
      ++zeros;
    else if (hfid.diagonal[i] == 1.0)
      ++ones;
    else
      ++others;
  }
  bool fid_ok = zeros == 1 && ones == dim - 1 && others == 0 &&
                hfid.diagonal[0] == 0.0;

  // Weight multiplicities counted directly, compared against binomial
  // coefficients computed by Pascal's rule.
  std::vector<long> binom(n + 1, 0);
  binom[0] = 1;
  for (int row = 1; row <= n; ++row)
    for (int j = row; j >= 1; --j) binom[j] += binom[j - 1];

  std::vector<long> multiplicity(n + 1, 0);
  bool wass_ok = true;
  for (int i = 0; i < dim; ++i) {
    double value = hwass.diagonal[i];
    int level = int(value);
    if (double(level) != value || level < 0 || level > n) {
      wass_ok = false;
      break;
    }
    ++multiplicity[level];
  }
  std::string mult_text;
  for (int j = 0; wass_ok && j <= n; ++j) {
    wass_ok = wass_ok && multiplicity[j] == binom[j];
    mult_text += fmt("%s%ld", j == 0 ? "" : ",", multiplicity[j]);
  }
  // Unique ground state at the all-zeros label for both observables.
  bool ground_ok = hwass.diagonal[0] == 0.0;
  for (int i = 1; i < dim; ++i) {
    ground_ok = ground_ok && hwass.diagonal[i] > 0.0 && hfid.diagonal[i] > 0.0;
  }

  const double elapsed = seconds_since(start);
  bool pass = fid_ok && wass_ok && ground_ok;
  return {pass,
          fmt("fidelity observable diagonal: %d zero / %d ones; weight "
              "observable multiplicities {%s} match binomials; unique ground "
              "state at the all-zeros label: %s, %.2f s",
              zeros, ones, mult_text.c_str(), ground_ok ? "yes" : "NO",
              elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "all";
  std::vector<std::pair<int, Outcome (*)()>> selected;
  if (mode == "core") {
    selected = {{1, criterion_1}, {2, criterion_2}, {3, criterion_3},
                {4, criterion_4}, {7, criterion_7}, {8, criterion_8}};
  } else if (mode == "separation") {
    selected = {{5, criterion_5}};
  } else if (mode == "two_stage") {
    selected = {{6, criterion_6}};
  } else if (mode == "all") {
    selected = {{1, criterion_1}, {2, criterion_2}, {3, criterion_3},
                {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
                {7, criterion_7}, {8, criterion_8}};
  } else {
    std::fprintf(stderr,
                 "usage: %s [all|core|separation|two_stage]\n", argv[0]);
    return 2;
  }

  bool all_pass = true;
  for (auto [number, criterion] : selected) {
    Outcome outcome = criterion();
    std::printf("CRITERION %d: %s — %s\n", number,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
