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

#include "submax/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "submax/errors.hpp"
#include "submax/greedy.hpp"
#include "submax/parallel.hpp"
#include "submax/strings.hpp"

namespace submax {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char kMetricsHeader[] =
    "algorithm,sweep,loglik,test_r2,auroc,recovery,time_s,evals,"
    "loglik_se,test_r2_se,auroc_se,recovery_se,time_s_se,evals_se";

std::uint64_t parse_uint64(const std::string& text,
                           const std::string& context) {
  const std::string t = trim(text);
  if (t.empty() || t[0] == '+' || t[0] == '-') {
    throw ConfigError(context + ": expected an unsigned integer, got '" +
                      text + "'");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError(context + ": expected an unsigned integer, got '" +
                      text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

// Comma-separated integers; "a..b" expands to the inclusive range.
std::vector<int> parse_int_list(const std::string& value,
                                const std::string& context) {
  std::vector<int> out;
  for (const std::string& raw : split(value, ',')) {
    const std::string token = trim(raw);
    const std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(token, context));
      continue;
    }
    const int lo = parse_int(trim(token.substr(0, dots)), context);
    const int hi = parse_int(trim(token.substr(dots + 2)), context);
    if (lo > hi) {
      throw ConfigError(context + ": empty range '" + token + "'");
    }
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& value,
                                      const std::string& context) {
  std::vector<double> out;
  for (const std::string& raw : split(value, ',')) {
    out.push_back(parse_double(trim(raw), context));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& value,
                                         const std::string& context) {
  std::vector<std::string> out;
  for (const std::string& raw : split(value, ',')) {
    const std::string token = trim(raw);
    if (token.empty()) {
      throw ConfigError(context + ": empty name in list '" + value + "'");
    }
    out.push_back(token);
  }
  return out;
}

// Synthesis parameters are checked both by validate() and by the generators,
// which are also called directly.
void validate_synthesis(const ExperimentConfig& config) {
  if (config.n < 1) throw ConfigError("n must be at least 1");
  if (config.d < 1) throw ConfigError("d must be at least 1");
  if (config.s < 1 || config.s > config.d) {
    throw ConfigError("s = " + std::to_string(config.s) +
                      " outside [1, d = " + std::to_string(config.d) + "]");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("alpha = " + format_double(config.alpha) +
                      " outside (0, 1)");
  }
  if (!(config.noise >= 0.0)) {
    throw ConfigError("noise must be nonnegative");
  }
}

// One row per sample: a stationary unit-variance autoregressive sequence
// across the columns with innovation variance alpha^2.
Eigen::MatrixXd draw_ar_design(int n, int d, double alpha, RandomSource& rng) {
  Eigen::MatrixXd x(n, d);
  const double carry = std::sqrt(1.0 - alpha * alpha);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    for (int t = 1; t < d; ++t) {
      x(i, t) = carry * x(i, t - 1) + alpha * rng.normal();
    }
  }
  return x;
}

std::vector<int> draw_support(int d, int s, RandomSource& rng) {
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j =
        i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - i)));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> support(perm.begin(), perm.begin() + s);
  std::sort(support.begin(), support.end());
  return support;
}

// Random sign times (5 sqrt(log d / n) + standard normal), per support
// element in ascending index order.
Eigen::VectorXd draw_coefficients(const std::vector<int>& support, int n,
                                  int d, RandomSource& rng) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  const double base = 5.0 * std::sqrt(std::log(static_cast<double>(d)) /
                                      static_cast<double>(n));
  for (int j : support) {
    const double sign = rng.uniform_int(2) == 0 ? 1.0 : -1.0;
    beta(j) = sign * (base + rng.normal());
  }
  return beta;
}

struct CellSpec {
  std::string algorithm;
  double sweep = 0.0;
  int k = 0;
  double delta = 0.0;  // used by stochastic-greedy only
};

// The cell list fixes the per-iteration substream order, so it depends only
// on the config.
std::vector<CellSpec> build_cells(const ExperimentConfig& config) {
  std::vector<CellSpec> cells;
  const double default_delta = config.delta_values.front();
  for (const std::string& name : config.algorithms) {
    if (config.delta_sweep()) {
      const int k = config.k_values.front();
      if (name == "stochastic-greedy") {
        for (double delta : config.delta_values) {
          cells.push_back({name, delta, k, delta});
        }
      } else {
        cells.push_back({name, 0.0, k, default_delta});
      }
    } else {
      for (int k : config.k_values) {
        cells.push_back({name, static_cast<double>(k), k, default_delta});
      }
    }
  }
  return cells;
}

struct CellSample {
  double loglik = kNaN;
  double test_r2 = kNaN;
  double auroc = kNaN;
  double recovery = kNaN;
  double time_s = kNaN;
  double evals = kNaN;
};

// The winning selection in pick order, its objective value, and the oracle
// cost of one algorithm run.
struct RunOutcome {
  std::vector<int> selection;
  double value = 0.0;
  std::uint64_t evaluations = 0;
};

// Everything a cell run needs; exactly one of the objective pointers is set.
struct Dataset {
  std::shared_ptr<const RegressionInstance> train;
  std::shared_ptr<const RegressionInstance> test;  // null without a test set
  std::shared_ptr<const LogisticObjective> logistic;
  std::vector<int> support;  // empty when ground truth is unknown
  int d = 0;
  int n = 0;
};

Dataset build_dataset(const ExperimentConfig& config, RandomSource& data_rng) {
  Dataset data;
  if (config.objective == "regression") {
    if (!config.csv.empty()) {
      data.train = std::make_shared<const RegressionInstance>(
          normalize(load_regression_csv(config.csv)));
    } else {
      SyntheticRegression syn = generate_synthetic(config, data_rng);
      data.train =
          std::make_shared<const RegressionInstance>(std::move(syn.train));
      data.test =
          std::make_shared<const RegressionInstance>(std::move(syn.test));
      data.support = std::move(syn.support);
    }
    data.d = data.train->dimension();
    data.n = data.train->samples();
  } else {
    if (!config.csv.empty()) {
      data.logistic = std::make_shared<const LogisticObjective>(
          load_logistic_csv(config.csv));
    } else {
      SyntheticLogistic syn = generate_synthetic_logistic(config, data_rng);
      data.logistic = std::make_shared<const LogisticObjective>(
          std::move(syn.x), std::move(syn.labels));
      data.support = std::move(syn.support);
    }
    data.d = data.logistic->dimension();
    data.n = data.logistic->samples();
  }
  return data;
}

RunOutcome from_trace(const SelectionTrace& trace) {
  return {trace.selected_in_order(), trace.value(),
          trace.total_evaluations()};
}

RunOutcome run_cell(const CellSpec& cell, const Dataset& data,
                    const SetFunctionOracle& oracle, SetView all, int l,
                    RandomSource& rng) {
  if (cell.algorithm == "greedy-fs") {
    return from_trace(greedy(oracle, all, cell.k));
  }
  if (cell.algorithm == "omp") {
    return from_trace(omp_select(*data.train, cell.k));
  }
  if (cell.algorithm == "stochastic-greedy") {
    return from_trace(stochastic_greedy(oracle, all, cell.k, cell.delta, rng));
  }
  LocalSolver solver;
  if (cell.algorithm == "distributed-fs") {
    solver = [&oracle](const std::vector<int>& candidates, int k) {
      return greedy(oracle, candidates, k);
    };
  } else if (cell.algorithm == "distributed-omp") {
    const RegressionInstance& instance = *data.train;
    solver = [&instance](const std::vector<int>& candidates, int k) {
      return omp_select(instance, k, candidates);
    };
  } else {
    throw ConfigError("unknown algorithm '" + cell.algorithm + "'");
  }
  const std::vector<std::vector<int>> parts = partition_uniform(all, l, rng);
  DistributedResult result = distributed_run(parts, solver, cell.k, 1);
  return {std::move(result.returned), result.returned_value,
          result.total_evaluations()};
}

double test_r2_metric(const RegressionInstance& train,
                      const RegressionInstance& test, SetView in_order) {
  CholeskyProjection projection(train.c, train.b);
  for (int j : in_order) projection.add(j);
  const Eigen::VectorXd beta = projection.coefficients();
  const double denom = test.y.squaredNorm();
  const double rss = (test.y - test.x * beta).squaredNorm();
  return 1.0 - rss / denom;
}

double recovery_percent(const std::vector<int>& selection_sorted,
                        const std::vector<int>& support) {
  int hits = 0;
  for (int j : support) {
    if (std::binary_search(selection_sorted.begin(), selection_sorted.end(),
                           j)) {
      ++hits;
    }
  }
  return 100.0 * static_cast<double>(hits) /
         static_cast<double>(support.size());
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Standard error of the mean; 0 for a single defined sample, NaN whenever
// the mean itself is undefined.
double se_of(const std::vector<double>& values, double mean) {
  if (std::isnan(mean)) return kNaN;
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double n = static_cast<double>(values.size());
  return std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

void append_field(std::string& line, double value) {
  line += ',';
  line += format_double(value);
}

const char kPlotScript[] = R"PY(#!/usr/bin/env python3
"""Renders metrics.png from the metrics.csv next to this script."""
import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
PANELS = [
    ("loglik", "normalized log likelihood"),
    ("test_r2", "test R^2"),
    ("auroc", "AUROC"),
    ("recovery", "support recovery (%)"),
]


def main():
    with open(os.path.join(HERE, "metrics.csv"), newline="") as handle:
        rows = list(csv.DictReader(handle))
    algorithms = sorted({row["algorithm"] for row in rows})
    fig, axes = plt.subplots(2, 2, figsize=(11, 8))
    for ax, (key, label) in zip(axes.flat, PANELS):
        for name in algorithms:
            points = []
            for row in rows:
                if row["algorithm"] != name:
                    continue
                y = float(row[key])
                if math.isnan(y):
                    continue
                err = float(row[key + "_se"])
                points.append((float(row["sweep"]), y,
                               0.0 if math.isnan(err) else err))
            if not points:
                continue
            points.sort()
            ax.errorbar(
                [p[0] for p in points],
                [p[1] for p in points],
                yerr=[p[2] for p in points],
                marker="o",
                capsize=2,
                label=name,
            )
        ax.set_xlabel("sweep")
        ax.set_ylabel(label)
        ax.grid(True, alpha=0.3)
    handles, labels = [], []
    for ax in axes.flat:
        handles, labels = ax.get_legend_handles_labels()
        if handles:
            break
    if handles:
        fig.legend(handles, labels, loc="lower center", ncol=len(labels))
    fig.tight_layout(rect=(0, 0.06, 1, 1))
    fig.savefig(os.path.join(HERE, "metrics.png"), dpi=150)


if __name__ == "__main__":
    main()
)PY";

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {
      "greedy-fs", "omp", "stochastic-greedy", "distributed-fs",
      "distributed-omp"};
  return names;
}

ExperimentConfig parse_experiment_config_text(const std::string& text,
                                              const std::string& context) {
  ExperimentConfig config;
  const std::vector<std::string> lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = context + ":" + std::to_string(i + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + line +
                        "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "objective") {
      config.objective = value;
    } else if (key == "n") {
      config.n = parse_int(value, where);
    } else if (key == "d") {
      config.d = parse_int(value, where);
    } else if (key == "s") {
      config.s = parse_int(value, where);
    } else if (key == "alpha") {
      config.alpha = parse_double(value, where);
    } else if (key == "noise") {
      config.noise = parse_double(value, where);
    } else if (key == "l") {
      config.l = parse_int(value, where);
    } else if (key == "k") {
      config.k_values = parse_int_list(value, where);
    } else if (key == "delta") {
      config.delta_values = parse_double_list(value, where);
    } else if (key == "algorithms") {
      config.algorithms = parse_name_list(value, where);
    } else if (key == "seed") {
      config.seed = parse_uint64(value, where);
    } else if (key == "iterations") {
      config.iterations = parse_int(value, where);
    } else if (key == "csv") {
      config.csv = value;
    } else if (key == "threads") {
      config.threads = parse_int(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  validate(config);
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config_text(buffer.str(), path);
}

void validate(const ExperimentConfig& config) {
  if (config.objective != "regression" && config.objective != "logistic") {
    throw ConfigError("objective must be 'regression' or 'logistic', got '" +
                      config.objective + "'");
  }
  if (config.iterations < 1) throw ConfigError("iterations must be at least 1");
  if (config.threads < 1) throw ConfigError("threads must be at least 1");
  if (config.l < 1) throw ConfigError("l must be at least 1");
  if (config.k_values.empty()) throw ConfigError("k sweep list is empty");
  for (int k : config.k_values) {
    if (k < 1) {
      throw ConfigError("k = " + std::to_string(k) + " must be at least 1");
    }
  }
  if (config.delta_values.empty()) {
    throw ConfigError("delta sweep list is empty");
  }
  for (double delta : config.delta_values) {
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ConfigError("delta = " + format_double(delta) +
                        " outside (0, 1)");
    }
  }
  if (config.delta_sweep() && config.k_values.size() != 1) {
    throw ConfigError(
        "a delta sweep needs a single k; got " +
        std::to_string(config.k_values.size()) + " k values");
  }
  {
    std::unordered_set<int> seen(config.k_values.begin(),
                                 config.k_values.end());
    if (seen.size() != config.k_values.size()) {
      throw ConfigError("duplicate values in the k sweep list");
    }
  }
  {
    std::unordered_set<double> seen(config.delta_values.begin(),
                                    config.delta_values.end());
    if (seen.size() != config.delta_values.size()) {
      throw ConfigError("duplicate values in the delta sweep list");
    }
  }
  if (config.algorithms.empty()) throw ConfigError("algorithm list is empty");
  const std::vector<std::string>& known = known_algorithms();
  std::unordered_set<std::string> seen_names;
  for (const std::string& name : config.algorithms) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::string allowed;
      for (const std::string& k : known) {
        if (!allowed.empty()) allowed += ", ";
        allowed += k;
      }
      throw ConfigError("unknown algorithm '" + name + "' (known: " +
                        allowed + ")");
    }
    if (!seen_names.insert(name).second) {
      throw ConfigError("algorithm '" + name + "' listed twice");
    }
    if (config.objective == "logistic" &&
        (name == "omp" || name == "distributed-omp")) {
      throw ConfigError("algorithm '" + name +
                        "' requires the regression objective");
    }
  }
  if (config.csv.empty()) {
    validate_synthesis(config);
    for (int k : config.k_values) {
      if (k > config.d) {
        throw ConfigError("k = " + std::to_string(k) + " exceeds d = " +
                          std::to_string(config.d));
      }
    }
  }
}

SyntheticRegression generate_synthetic(const ExperimentConfig& config,
                                       RandomSource& rng) {
  validate_synthesis(config);
  const int n = config.n;
  const int d = config.d;
  std::vector<int> support = draw_support(d, config.s, rng);
  Eigen::VectorXd beta = draw_coefficients(support, n, d, rng);

  const auto draw_split = [&]() {
    Eigen::MatrixXd x = draw_ar_design(n, d, config.alpha, rng);
    Eigen::VectorXd y = x * beta;
    // Noise variance scales with the signal norm, so the signal-to-noise
    // ratio is fixed across problem sizes.
    const double sd = std::sqrt(config.noise * y.norm());
    for (int i = 0; i < n; ++i) y(i) += sd * rng.normal();
    return normalize(RegressionInstance(std::move(x), std::move(y)));
  };
  RegressionInstance train = draw_split();
  RegressionInstance test = draw_split();
  return SyntheticRegression{std::move(train), std::move(test),
                             std::move(beta), std::move(support)};
}

SyntheticLogistic generate_synthetic_logistic(const ExperimentConfig& config,
                                              RandomSource& rng) {
  validate_synthesis(config);
  const int n = config.n;
  const int d = config.d;
  if (n < 2) {
    throw DegenerateDataError(
        "logistic synthesis needs at least 2 samples to scale the "
        "predictor spread");
  }
  SyntheticLogistic out;
  out.support = draw_support(d, config.s, rng);
  out.beta = draw_coefficients(out.support, n, d, rng);
  out.x = draw_ar_design(n, d, config.alpha, rng);
  for (int j = 0; j < d; ++j) {
    const double norm = out.x.col(j).norm();
    if (norm <= 1e-12) {
      throw DegenerateDataError("design column " + std::to_string(j) +
                                " has zero norm");
    }
    out.x.col(j) /= norm;
  }
  Eigen::VectorXd eta = out.x * out.beta;
  const double mean = eta.mean();
  const double sd = std::sqrt((eta.array() - mean).square().sum() /
                              static_cast<double>(n - 1));
  if (!(sd > 0.0)) {
    throw DegenerateDataError(
        "linear predictor is constant; cannot scale its spread");
  }
  // Spread 2 keeps the classes overlapping but learnable.
  const double scale = 2.0 / sd;
  out.beta *= scale;
  eta *= scale;
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const double p = 1.0 / (1.0 + std::exp(-eta(i)));
    out.labels(i) = rng.uniform01() < p ? 1.0 : -1.0;
  }
  return out;
}

Eigen::VectorXd selection_scores(const std::vector<int>& selected_in_order,
                                 int d) {
  const GroundSet ground{d};
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(d);
  const int m = static_cast<int>(selected_in_order.size());
  for (int i = 0; i < m; ++i) {
    const int j = selected_in_order[i];
    if (!ground.contains(j)) {
      throw DomainError("selection index " + std::to_string(j) +
                        " outside the ground set of size " +
                        std::to_string(d));
    }
    if (scores(j) != 0.0) {
      throw DomainError("element " + std::to_string(j) +
                        " selected more than once");
    }
    scores(j) = static_cast<double>(m - i);
  }
  return scores;
}

double auroc(const Eigen::VectorXd& scores, SetView true_support) {
  const int d = static_cast<int>(scores.size());
  const std::vector<int> positives =
      canonical_subset(GroundSet{d}, true_support);
  const int p = static_cast<int>(positives.size());
  const int q = d - p;
  if (p == 0 || q == 0) {
    throw UndefinedMetricError(
        "AUROC needs at least one support and one non-support feature");
  }
  std::vector<char> is_positive(d, 0);
  for (int j : positives) is_positive[j] = 1;
  double wins = 0.0;
  for (int j : positives) {
    for (int i = 0; i < d; ++i) {
      if (is_positive[i]) continue;
      if (scores(j) > scores(i)) {
        wins += 1.0;
      } else if (scores(j) == scores(i)) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(p) * static_cast<double>(q));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  RandomSource root(config.seed);
  RandomSource data_rng = root.split();
  const Dataset data = build_dataset(config, data_rng);
  for (int k : config.k_values) {
    if (k > data.d) {
      throw ConfigError("k = " + std::to_string(k) +
                        " exceeds the dataset feature count d = " +
                        std::to_string(data.d));
    }
  }

  const std::vector<CellSpec> cells = build_cells(config);
  const std::size_t iterations = static_cast<std::size_t>(config.iterations);
  std::vector<RandomSource> iteration_rngs;
  iteration_rngs.reserve(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    iteration_rngs.push_back(root.split());
  }

  std::vector<CellSample> samples(cells.size() * iterations);
  const bool regression = config.objective == "regression";
  const double loglik_scale =
      regression ? 1.0 : 1.0 / (static_cast<double>(data.n) *
                                std::numbers::ln2);

  parallel_for(iterations, config.threads, [&](std::size_t iter) {
    RandomSource it_rng = iteration_rngs[iter];
    // Private oracle: the data are shared read-only, the evaluation counter
    // is not.
    std::unique_ptr<SetFunctionOracle> oracle;
    if (regression) {
      oracle = std::make_unique<RSquaredObjective>(data.train);
    } else {
      oracle = std::make_unique<SupportObjective>(data.logistic,
                                                  InnerSolveOptions{});
    }
    std::vector<int> all(data.d);
    std::iota(all.begin(), all.end(), 0);

    for (std::size_t c = 0; c < cells.size(); ++c) {
      RandomSource cell_rng = it_rng.split();
      const CellSpec& cell = cells[c];
      const auto start = std::chrono::steady_clock::now();
      const RunOutcome outcome =
          run_cell(cell, data, *oracle, all, config.l, cell_rng);
      const auto stop = std::chrono::steady_clock::now();

      CellSample& slot = samples[c * iterations + iter];
      slot.time_s = std::chrono::duration<double>(stop - start).count();
      slot.evals = static_cast<double>(outcome.evaluations);
      slot.loglik = outcome.value * loglik_scale;
      if (regression && data.test) {
        slot.test_r2 =
            test_r2_metric(*data.train, *data.test, outcome.selection);
      }
      if (!data.support.empty()) {
        std::vector<int> sorted = outcome.selection;
        std::sort(sorted.begin(), sorted.end());
        slot.recovery = recovery_percent(sorted, data.support);
        try {
          slot.auroc =
              auroc(selection_scores(outcome.selection, data.d), data.support);
        } catch (const UndefinedMetricError&) {
          slot.auroc = kNaN;
        }
      }
    }
  });

  ExperimentResult result;
  result.rows.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> loglik, test_r2, auroc_v, recovery, time_s, evals;
    for (std::size_t i = 0; i < iterations; ++i) {
      const CellSample& s = samples[c * iterations + i];
      loglik.push_back(s.loglik);
      test_r2.push_back(s.test_r2);
      auroc_v.push_back(s.auroc);
      recovery.push_back(s.recovery);
      time_s.push_back(s.time_s);
      evals.push_back(s.evals);
    }
    MetricsRow row;
    row.algorithm = cells[c].algorithm;
    row.sweep = cells[c].sweep;
    row.loglik = mean_of(loglik);
    row.test_r2 = mean_of(test_r2);
    row.auroc = mean_of(auroc_v);
    row.recovery = mean_of(recovery);
    row.time_s = mean_of(time_s);
    row.evals = mean_of(evals);
    row.loglik_se = se_of(loglik, row.loglik);
    row.test_r2_se = se_of(test_r2, row.test_r2);
    row.auroc_se = se_of(auroc_v, row.auroc);
    row.recovery_se = se_of(recovery, row.recovery);
    row.time_s_se = se_of(time_s, row.time_s);
    row.evals_se = se_of(evals, row.evals);
    result.rows.push_back(std::move(row));
  }

  std::sort(result.rows.begin(), result.rows.end(),
            [](const MetricsRow& a, const MetricsRow& b) {
              if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
              return a.sweep < b.sweep;
            });

  for (const MetricsRow& row : result.rows) {
    const double fields[] = {row.loglik,      row.test_r2,  row.auroc,
                             row.recovery,    row.time_s,   row.evals,
                             row.loglik_se,   row.test_r2_se, row.auroc_se,
                             row.recovery_se, row.time_s_se, row.evals_se};
    for (double v : fields) {
      if (std::isnan(v)) ++result.nan_metrics;
    }
  }
  return result;
}

void emit_outputs(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw ResourceError("cannot create output directory " + out_dir + ": " +
                        ec.message());
  }
  const fs::path dir(out_dir);
  {
    std::ofstream csv(dir / "metrics.csv");
    if (!csv) {
      throw ResourceError("cannot write " + (dir / "metrics.csv").string());
    }
    csv << kMetricsHeader << '\n';
    for (const MetricsRow& row : result.rows) {
      std::string line = row.algorithm;
      append_field(line, row.sweep);
      append_field(line, row.loglik);
      append_field(line, row.test_r2);
      append_field(line, row.auroc);
      append_field(line, row.recovery);
      append_field(line, row.time_s);
      append_field(line, row.evals);
      append_field(line, row.loglik_se);
      append_field(line, row.test_r2_se);
      append_field(line, row.auroc_se);
      append_field(line, row.recovery_se);
      append_field(line, row.time_s_se);
      append_field(line, row.evals_se);
      csv << line << '\n';
    }
    if (!csv) {
      throw ResourceError("failed writing " + (dir / "metrics.csv").string());
    }
  }
  std::ofstream script(dir / "plot_metrics.py");
  if (!script) {
    throw ResourceError("cannot write " + (dir / "plot_metrics.py").string());
  }
  script << kPlotScript;
  if (!script) {
    throw ResourceError("failed writing " +
                        (dir / "plot_metrics.py").string());
  }
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open metrics file: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError(path + ": empty metrics file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMetricsHeader) {
    throw ConfigError(path + ": unexpected header '" + line + "'");
  }
  std::vector<MetricsRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 14) {
      throw ConfigError(where + ": expected 14 fields, got " +
                        std::to_string(fields.size()));
    }
    MetricsRow row;
    row.algorithm = trim(fields[0]);
    row.sweep = parse_double(trim(fields[1]), where);
    row.loglik = parse_double(trim(fields[2]), where);
    row.test_r2 = parse_double(trim(fields[3]), where);
    row.auroc = parse_double(trim(fields[4]), where);
    row.recovery = parse_double(trim(fields[5]), where);
    row.time_s = parse_double(trim(fields[6]), where);
    row.evals = parse_double(trim(fields[7]), where);
    row.loglik_se = parse_double(trim(fields[8]), where);
    row.test_r2_se = parse_double(trim(fields[9]), where);
    row.auroc_se = parse_double(trim(fields[10]), where);
    row.recovery_se = parse_double(trim(fields[11]), where);
    row.time_s_se = parse_double(trim(fields[12]), where);
    row.evals_se = parse_double(trim(fields[13]), where);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace submax
