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

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "rng.hpp"

namespace vqec {

namespace {

namespace fs = std::filesystem;

constexpr int kHistogramBins = 40;

// Shortest decimal digits that reproduce the double exactly on read-back.
std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

int resolve_workers(int requested, int jobs) {
  int workers = requested;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  return std::min(workers, std::max(jobs, 1));
}

// Runs one job per index over a worker pool; results land by index, so the
// outcome is independent of scheduling.
template <typename Fn>
void parallel_for(int jobs, int workers, Fn&& fn) {
  if (workers <= 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::optional<InitialPoint> initial_point(const ExperimentConfig& config) {
  if (config.init == InitMode::Random) return std::nullopt;
  ExactCodeParams code = exact_code_params(config.ansatz, config.noise.kind);
  return InitialPoint{code.alpha, code.beta};
}

std::vector<double> filtered_fidelities(const BatchSummary& batch) {
  std::vector<double> out;
  for (const RunRecord& r : batch.runs)
    if (r.final_fidelity >= batch.threshold) out.push_back(r.final_fidelity);
  return out;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) throw IoError("cannot write " + path.string());
  return out;
}

fs::path prepare_output_dir(const ExperimentConfig& config) {
  if (config.output_dir.empty()) throw IoError("no output directory configured");
  fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
  return dir;
}

void write_histogram_csv(const fs::path& path, const Histogram& hist) {
  std::ofstream out = open_output(path);
  out << "bin_left,bin_right,count\n";
  for (size_t i = 0; i < hist.counts.size(); ++i)
    out << format_double(hist.edges[i]) << ',' << format_double(hist.edges[i + 1])
        << ',' << hist.counts[i] << '\n';
  if (!out.good()) throw IoError("failed writing " + path.string());
}

nlohmann::json histogram_to_json(const Histogram& hist) {
  return {{"edges", hist.edges}, {"counts", hist.counts}};
}

// Config echo for summaries: the experiment identity only, without
// machine-local execution details, so identical experiments summarize
// identically regardless of worker count or output location.
nlohmann::json config_echo(const ExperimentConfig& config) {
  nlohmann::json j = experiment_config_to_json(config);
  j.erase("output");
  j["experiment"].erase("workers");
  return j;
}

}  // namespace

ThresholdMode threshold_mode_from_string(const std::string& name) {
  if (name == "f0") return ThresholdMode::F0;
  if (name == "f0_strong") return ThresholdMode::F0Strong;
  if (name == "custom") return ThresholdMode::Custom;
  throw std::invalid_argument("unknown threshold mode: " + name);
}

std::string to_string(ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::F0: return "f0";
    case ThresholdMode::F0Strong: return "f0_strong";
    case ThresholdMode::Custom: return "custom";
  }
  throw std::invalid_argument("bad threshold mode");
}

InitMode init_mode_from_string(const std::string& name) {
  if (name == "random") return InitMode::Random;
  if (name == "exact_code") return InitMode::ExactCode;
  throw std::invalid_argument("unknown init mode: " + name);
}

std::string to_string(InitMode mode) {
  return mode == InitMode::Random ? "random" : "exact_code";
}

void ExperimentConfig::validate() const {
  noise.validate();
  ansatz.validate();
  opt.validate();
  if (num_restarts < 1)
    throw std::invalid_argument("num_restarts must be at least 1");
  if (threshold_mode == ThresholdMode::Custom &&
      (custom_threshold < 0.0 || custom_threshold > 1.0))
    throw std::invalid_argument("custom threshold must lie in [0, 1]");
  if (workers < 0) throw std::invalid_argument("workers must be non-negative");
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const ExperimentConfig& defaults) {
  ExperimentConfig config = defaults;
  if (j.contains("noise")) {
    const nlohmann::json& n = j.at("noise");
    if (n.contains("kind"))
      config.noise.kind = noise_kind_from_string(n.at("kind").get<std::string>());
    config.noise.p = n.value("p", config.noise.p);
  }
  if (j.contains("ansatz")) {
    const nlohmann::json& a = j.at("ansatz");
    config.ansatz.layers = a.value("layers", config.ansatz.layers);
    if (a.contains("structure"))
      config.ansatz.structure =
          structure_from_string(a.at("structure").get<std::string>());
  }
  if (j.contains("opt"))
    config.opt = optimizer_config_from_json(j.at("opt"), config.opt);
  if (j.contains("experiment")) {
    const nlohmann::json& e = j.at("experiment");
    config.num_restarts = e.value("num_restarts", config.num_restarts);
    if (e.contains("threshold_mode"))
      config.threshold_mode =
          threshold_mode_from_string(e.at("threshold_mode").get<std::string>());
    config.custom_threshold = e.value("custom_threshold", config.custom_threshold);
    config.master_seed = e.value("master_seed", config.master_seed);
    if (e.contains("init"))
      config.init = init_mode_from_string(e.at("init").get<std::string>());
    config.workers = e.value("workers", config.workers);
  }
  config.output_dir = j.value("output", config.output_dir);
  config.validate();
  return config;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["noise"] = {{"kind", to_string(config.noise.kind)}, {"p", config.noise.p}};
  j["ansatz"] = {{"layers", config.ansatz.layers},
                 {"structure", to_string(config.ansatz.structure)}};
  j["opt"] = optimizer_config_to_json(config.opt);
  j["experiment"] = {{"num_restarts", config.num_restarts},
                     {"threshold_mode", to_string(config.threshold_mode)},
                     {"custom_threshold", config.custom_threshold},
                     {"master_seed", config.master_seed},
                     {"init", to_string(config.init)},
                     {"workers", config.workers}};
  j["output"] = config.output_dir;
  return j;
}

double threshold_value(const ExperimentConfig& config) {
  switch (config.threshold_mode) {
    case ThresholdMode::F0:
      return baseline_f0_closed(config.noise, config.ansatz.layout);
    case ThresholdMode::F0Strong:
      return baseline_f0_strong_closed(config.noise, config.ansatz.layout);
    case ThresholdMode::Custom:
      return config.custom_threshold;
  }
  throw std::invalid_argument("bad threshold mode");
}

Histogram make_histogram(const std::vector<double>& values, double lo, double hi,
                         int bins) {
  Histogram hist;
  hist.edges.resize(bins + 1);
  hist.counts.assign(bins, 0);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) hist.edges[i] = lo + width * i;
  hist.edges[bins] = hi;
  for (double v : values) {
    if (v < lo || v > hi) continue;
    int bin = std::min(static_cast<int>((v - lo) / width), bins - 1);
    ++hist.counts[bin];
  }
  return hist;
}

BatchSummary run_batch(const ExperimentConfig& config, CostHamiltonian::Kind kind) {
  config.validate();
  BatchSummary batch;
  batch.cost_kind = to_string(kind);
  batch.threshold = threshold_value(config);
  batch.runs.resize(config.num_restarts);

  const std::optional<InitialPoint> init = initial_point(config);
  const int workers = resolve_workers(config.workers, config.num_restarts);
  const int n = config.ansatz.layout.n();

  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  parallel_for(config.num_restarts, workers, [&](int i) {
    if (failed.load()) return;
    try {
      PipelineObjective objective(make_pipeline(config.ansatz, config.noise),
                                  make_cost_hamiltonian(kind, n));
      OptimizerConfig opt = config.opt;
      opt.seed = derive_seed(config.master_seed, i);
      batch.runs[i] = descend(objective, opt, init);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      failed = true;
      error = e.what();
    }
  });
  if (failed) throw std::runtime_error("restart failed: " + error);

  int above = 0;
  for (const RunRecord& r : batch.runs)
    if (r.final_fidelity >= batch.threshold) ++above;
  batch.success_rate = static_cast<double>(above) / config.num_restarts;

  const std::vector<double> kept = filtered_fidelities(batch);
  batch.fidelity_hist = make_histogram(kept, 0.0, 1.0, kHistogramBins);
  std::vector<double> iterations;
  for (const RunRecord& r : batch.runs)
    if (r.final_fidelity >= batch.threshold)
      iterations.push_back(static_cast<double>(r.iterations));
  batch.iteration_hist = make_histogram(
      iterations, 0.0, static_cast<double>(config.opt.max_iters), kHistogramBins);
  return batch;
}

TwoStageSummary run_two_stage(const ExperimentConfig& config,
                              CostHamiltonian::Kind first,
                              CostHamiltonian::Kind second) {
  config.validate();
  if (first == second)
    throw std::invalid_argument("two-stage runs need two distinct cost kinds");

  TwoStageSummary summary;
  summary.first_kind = to_string(first);
  summary.second_kind = to_string(second);
  summary.runs.resize(config.num_restarts);

  const std::optional<InitialPoint> init = initial_point(config);
  const int workers = resolve_workers(config.workers, config.num_restarts);
  const int n = config.ansatz.layout.n();

  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  parallel_for(config.num_restarts, workers, [&](int i) {
    if (failed.load()) return;
    try {
      PipelineSpec pipeline = make_pipeline(config.ansatz, config.noise);
      PipelineObjective first_objective(pipeline, make_cost_hamiltonian(first, n));
      PipelineObjective second_objective(pipeline, make_cost_hamiltonian(second, n));
      OptimizerConfig opt = config.opt;
      opt.seed = derive_seed(config.master_seed, i);

      RunRecord stage_one = descend(first_objective, opt, init);
      RunRecord stage_two = descend(
          second_objective, opt,
          InitialPoint{stage_one.final_alpha, stage_one.final_beta});

      TwoStageRun& run = summary.runs[i];
      run.seed = opt.seed;
      run.first_fidelity = stage_one.final_fidelity;
      run.second_fidelity = stage_two.final_fidelity;
      run.improvement = stage_two.final_fidelity - stage_one.final_fidelity;
      run.first_iterations = stage_one.iterations;
      run.second_iterations = stage_two.iterations;
      run.first_converged = stage_one.converged;
      run.second_converged = stage_two.converged;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      failed = true;
      error = e.what();
    }
  });
  if (failed) throw std::runtime_error("two-stage restart failed: " + error);

  std::vector<double> improvements;
  improvements.reserve(summary.runs.size());
  for (const TwoStageRun& r : summary.runs) improvements.push_back(r.improvement);
  std::vector<double> sorted = improvements;
  std::sort(sorted.begin(), sorted.end());
  summary.max_improvement = sorted.back();
  const size_t m = sorted.size();
  summary.median_improvement =
      (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  const double lo = std::min(0.0, sorted.front());
  const double hi = std::max(1.0, sorted.back());
  summary.improvement_hist = make_histogram(improvements, lo, hi, kHistogramBins);
  return summary;
}

BaselineReport report_baselines(const NoiseSpec& noise, const QubitLayout& layout) {
  BaselineReport report;
  report.f0 = baseline_f0(noise, layout);
  report.f0_strong = baseline_f0_strong(noise, layout);
  const int n = layout.n();
  const Eigen::Matrix2cd sigma = pauli_matrix(noise_pauli(noise.kind));
  const double overlap = std::norm(sigma(0, 0));
  const double correction =
      (static_cast<double>(n - 1) / n) * noise.p * (1.0 - overlap);
  report.identity_residual = report.f0 - (report.f0_strong - correction);
  return report;
}

nlohmann::json batch_summary_to_json(const ExperimentConfig& config,
                                     const BatchSummary& batch) {
  nlohmann::json j;
  j["cost_kind"] = batch.cost_kind;
  j["num_restarts"] = config.num_restarts;
  j["threshold"] = batch.threshold;
  j["threshold_mode"] = to_string(config.threshold_mode);
  j["success_rate"] = batch.success_rate;
  int above = 0;
  for (const RunRecord& r : batch.runs)
    if (r.final_fidelity >= batch.threshold) ++above;
  j["runs_above_threshold"] = above;
  j["fidelity_histogram"] = histogram_to_json(batch.fidelity_hist);
  j["iteration_histogram"] = histogram_to_json(batch.iteration_hist);
  j["config"] = config_echo(config);
  return j;
}

nlohmann::json two_stage_summary_to_json(const ExperimentConfig& config,
                                         const TwoStageSummary& summary) {
  nlohmann::json j;
  j["first_kind"] = summary.first_kind;
  j["second_kind"] = summary.second_kind;
  j["num_restarts"] = config.num_restarts;
  j["max_improvement"] = summary.max_improvement;
  j["median_improvement"] = summary.median_improvement;
  j["improvement_histogram"] = histogram_to_json(summary.improvement_hist);
  nlohmann::json runs = nlohmann::json::array();
  for (const TwoStageRun& r : summary.runs)
    runs.push_back({{"seed", r.seed},
                    {"first_fidelity", r.first_fidelity},
                    {"second_fidelity", r.second_fidelity},
                    {"improvement", r.improvement},
                    {"first_iterations", r.first_iterations},
                    {"second_iterations", r.second_iterations},
                    {"first_converged", r.first_converged},
                    {"second_converged", r.second_converged}});
  j["runs"] = runs;
  j["config"] = config_echo(config);
  return j;
}

void write_batch_outputs(const ExperimentConfig& config, const BatchSummary& batch) {
  const fs::path dir = prepare_output_dir(config);

  {
    std::ofstream out = open_output(dir / "runs.csv");
    out << "seed,cost_kind,iterations,converged,final_fidelity,final_cost\n";
    for (const RunRecord& r : batch.runs)
      out << r.seed << ',' << r.cost_kind << ',' << r.iterations << ','
          << int(r.converged) << ',' << format_double(r.final_fidelity) << ','
          << format_double(r.cost_history.back()) << '\n';
    if (!out.good()) throw IoError("failed writing runs.csv");
  }
  write_histogram_csv(dir / "hist_fidelity.csv", batch.fidelity_hist);
  write_histogram_csv(dir / "hist_iterations.csv", batch.iteration_hist);
  {
    std::ofstream out = open_output(dir / "summary.json");
    out << batch_summary_to_json(config, batch).dump(2) << '\n';
    if (!out.good()) throw IoError("failed writing summary.json");
  }
}

void write_two_stage_outputs(const ExperimentConfig& config,
                             const TwoStageSummary& summary) {
  const fs::path dir = prepare_output_dir(config);
  write_histogram_csv(dir / "hist_improvement.csv", summary.improvement_hist);
  std::ofstream out = open_output(dir / "summary.json");
  out << two_stage_summary_to_json(config, summary).dump(2) << '\n';
  if (!out.good()) throw IoError("failed writing summary.json");
}

}  // namespace vqec
