// Copyright 2026 The Authors.
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

#ifndef SUBMAX_EXPERIMENT_HPP_
#define SUBMAX_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "submax/random_source.hpp"
#include "submax/regression.hpp"
#include "submax/set_function.hpp"
#include "submax/support_selection.hpp"

namespace submax {

// Algorithm names accepted in configs: greedy-fs, omp, stochastic-greedy,
// distributed-fs, distributed-omp.
extern const std::vector<std::string>& known_algorithms();

// Flat `key = value` experiment description. Sweeps run over k by default;
// when `delta` lists more than one value the sweep runs over delta at the
// single configured k instead (only stochastic algorithms react to delta;
// the others are reported once under sweep value 0).
struct ExperimentConfig {
  std::string objective = "regression";  // or "logistic"
  int n = 800;
  int d = 1000;
  int s = 100;            // true support size of the synthetic coefficients
  double alpha = 0.5;     // autoregressive parameter of the design columns
  double noise = 0.01;    // response noise variance = noise * |X beta|
  int l = 10;             // partitions for the distributed algorithms
  std::vector<int> k_values = {1, 2, 3, 4, 5, 6, 7, 8,
                               9, 10, 11, 12, 13, 14, 15};
  std::vector<double> delta_values = {0.1};
  std::vector<std::string> algorithms = {"greedy-fs", "omp",
                                         "stochastic-greedy", "distributed-fs",
                                         "distributed-omp"};
  std::uint64_t seed = 0;
  int iterations = 10;
  std::string csv;  // optional input dataset; overrides synthesis
  int threads = 1;

  bool delta_sweep() const { return delta_values.size() > 1; }
};

// Parses `key = value` lines ('#' starts a comment, blank lines ignored;
// list values are comma separated and integer lists accept "a..b" ranges).
// Unknown keys and malformed values throw ConfigError naming the line.
ExperimentConfig parse_experiment_config_text(const std::string& text,
                                              const std::string& context);
ExperimentConfig load_experiment_config(const std::string& path);

// Consistency checks shared by both parsers and direct construction.
void validate(const ExperimentConfig& config);

// One synthetic draw: the design columns follow a stationary unit-variance
// autoregressive process (consecutive-column correlation sqrt(1 - alpha^2)),
// the s-sparse coefficients have random signs and magnitudes
// 5 sqrt(log(d)/n) + standard normal, and the response noise variance is
// `noise * |X beta|`. Train and test are drawn independently with the same
// coefficients, then normalized.
struct SyntheticRegression {
  RegressionInstance train;
  RegressionInstance test;
  Eigen::VectorXd beta;      // pre-normalization coefficients
  std::vector<int> support;  // sorted true support
};
SyntheticRegression generate_synthetic(const ExperimentConfig& config,
                                       RandomSource& rng);

// Logistic variant: same design process with unit-norm columns, labels drawn
// from the logistic model with the linear predictor rescaled to standard
// deviation 2 so classes are neither separable nor pure noise.
struct SyntheticLogistic {
  Eigen::MatrixXd x;
  Eigen::VectorXd labels;    // +-1
  Eigen::VectorXd beta;      // coefficients after rescaling
  std::vector<int> support;  // sorted true support
};
SyntheticLogistic generate_synthetic_logistic(const ExperimentConfig& config,
                                              RandomSource& rng);

// Rank scores for AUROC: the i-th selected element (0-based) scores
// |selection| - i, every unselected element scores 0.
Eigen::VectorXd selection_scores(const std::vector<int>& selected_in_order,
                                 int d);

// Probability that a uniformly random true-support element outscores a
// uniformly random non-support element, ties counted 1/2. Throws
// UndefinedMetricError when either class is empty.
double auroc(const Eigen::VectorXd& scores, SetView true_support);

// One averaged result line: `sweep` is the k value (k sweeps), the delta
// value (delta sweeps, stochastic algorithms), or 0 (delta sweeps,
// non-stochastic algorithms). Metrics without a defined value (AUROC and
// recovery without ground truth, test R^2 for logistic or CSV input) are
// NaN. Standard errors are over iterations.
struct MetricsRow {
  std::string algorithm;
  double sweep = 0.0;
  double loglik = 0.0;
  double test_r2 = 0.0;
  double auroc = 0.0;
  double recovery = 0.0;
  double time_s = 0.0;
  double evals = 0.0;
  double loglik_se = 0.0;
  double test_r2_se = 0.0;
  double auroc_se = 0.0;
  double recovery_se = 0.0;
  double time_s_se = 0.0;
  double evals_se = 0.0;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;  // sorted by (algorithm, sweep)
  // Count of NaN metric fields across rows, reported in the CLI summary.
  int nan_metrics = 0;
};

// Runs iterations in parallel on private oracle copies; every distributed
// cell draws a fresh partition from its own random substream. Metrics are
// averaged per (algorithm, sweep) cell and the rows sorted. Everything
// except the wall-time columns is deterministic in (config, seed) for any
// thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes `metrics.csv` (header: algorithm,sweep,loglik,test_r2,auroc,
// recovery,time_s,evals, then the six _se columns; doubles as %.17g; NaN as
// literal `nan`) and `plot_metrics.py`, a self-contained script rendering
// the four-panel metric layout. Creates the directory if needed.
void emit_outputs(const ExperimentResult& result, const std::string& out_dir);

std::vector<MetricsRow> read_metrics_csv(const std::string& path);

}  // namespace submax

#endif  // SUBMAX_EXPERIMENT_HPP_
