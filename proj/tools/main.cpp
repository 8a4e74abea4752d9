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

// Command-line front end: `run` executes an experiment config and writes
// metrics, `ratios` prints ratio reports and bound certificates for a
// regression CSV, `synth` writes a synthetic dataset. Exit codes: 0 success,
// 2 configuration error, 3 resource-limit error, 1 anything else.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "submax/errors.hpp"
#include "submax/experiment.hpp"
#include "submax/greedy.hpp"
#include "submax/random_source.hpp"
#include "submax/ratios.hpp"
#include "submax/regression.hpp"
#include "submax/sparse_eigen.hpp"
#include "submax/strings.hpp"

namespace {

std::string fmt(double v) { return submax::format_double(v, 12); }

int do_run(const std::string& config_path, const std::string& out_dir,
           std::optional<std::uint64_t> seed, std::optional<int> threads) {
  submax::ExperimentConfig config =
      submax::load_experiment_config(config_path);
  if (seed.has_value()) config.seed = *seed;
  if (threads.has_value()) config.threads = *threads;
  submax::validate(config);
  const submax::ExperimentResult result = submax::run_experiment(config);
  submax::emit_outputs(result, out_dir);
  std::cout << "objective = " << config.objective << "\n";
  std::cout << "seed = " << config.seed << "\n";
  std::cout << "rows = " << result.rows.size() << "\n";
  std::cout << "nan_metrics = " << result.nan_metrics << "\n";
  std::cout << "wrote = " << out_dir << "/metrics.csv\n";
  std::cout << "wrote = " << out_dir << "/plot_metrics.py\n";
  return 0;
}

int do_ratios(const std::string& csv_path, int k,
              std::optional<double> delta) {
  if (delta.has_value() && !(*delta > 0.0 && *delta < 1.0)) {
    throw submax::ConfigError("delta = " + fmt(*delta) + " outside (0, 1)");
  }
  const auto instance = std::make_shared<const submax::RegressionInstance>(
      submax::normalize(submax::load_regression_csv(csv_path)));
  const int d = instance->dimension();
  const submax::RSquaredObjective oracle(instance);
  std::vector<int> all(d);
  std::iota(all.begin(), all.end(), 0);
  const submax::SelectionTrace trace = submax::greedy(oracle, all, k);
  const std::vector<int> greedy_set = trace.selected_in_order();

  std::cout << "dataset = " << csv_path << "\n";
  std::cout << "samples = " << instance->samples() << "\n";
  std::cout << "features = " << d << "\n";
  std::cout << "k = " << k << "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const submax::SelectionStep& step = trace.steps[i];
    std::cout << "step_" << (i + 1) << " = element " << step.element
              << ", gain " << fmt(step.gain) << ", value " << fmt(step.value)
              << ", evals " << step.evaluations << "\n";
  }
  std::cout << "greedy_selection = " << submax::support_to_csv(greedy_set)
            << "\n";
  std::cout << "greedy_value = " << fmt(trace.value()) << "\n";
  std::cout << "greedy_evaluations = " << trace.total_evaluations() << "\n";

  // Best available lower bounds feeding the certificates: exact enumeration
  // at low dimension, spectral bounds otherwise.
  std::optional<double> gamma;
  std::optional<double> nu;
  std::optional<double> opt_value;

  if (d <= submax::kMaxBruteForceDimension) {
    std::cout << "\n# exact submodularity ratio, minimized over subsets of "
                 "the greedy selection\n";
    const submax::RatioReport gamma_report =
        submax::submodularity_ratio_uk(oracle, greedy_set, k);
    std::cout << gamma_report.to_key_value_lines();
    gamma = gamma_report.value;
    try {
      const submax::RatioReport nu_report =
          submax::subadditivity_ratio_k(oracle, k);
      std::cout << "\n# exact subadditivity ratio, minimized over all "
                   "supports of size k\n";
      std::cout << nu_report.to_key_value_lines();
      nu = nu_report.value;
    } catch (const submax::ResourceError& e) {
      std::cout << "exact_nu = skipped (" << e.what() << ")\n";
    }
    try {
      const submax::BruteForceOpt opt = submax::brute_force_opt(oracle, k);
      std::cout << "\n# exhaustive optimum over supports of size at most k\n";
      std::cout << "opt_value = " << fmt(opt.value) << "\n";
      std::cout << "opt_set = " << submax::support_to_csv(opt.set) << "\n";
      opt_value = opt.value;
    } catch (const submax::ResourceError& e) {
      std::cout << "opt = skipped (" << e.what() << ")\n";
    }
  } else {
    std::cout << "exact_ratios = skipped (" << d
              << " features exceed the exhaustive-scan cap of "
              << submax::kMaxBruteForceDimension << ")\n";
  }

  std::cout << "\n";
  try {
    const double bound = submax::gamma_lower_bound(*instance, greedy_set, k);
    std::cout << "spectral_gamma_bound = " << fmt(bound)
              << "  # smallest eigenvalue over principal submatrices of "
                 "order "
              << std::min(d, 2 * k) << "\n";
    if (!gamma.has_value()) gamma = bound;
  } catch (const submax::ResourceError& e) {
    std::cout << "spectral_gamma_bound = skipped (" << e.what() << ")\n";
  }
  try {
    const submax::SparseEigenBounds bounds =
        submax::sparse_eigenvalues(instance->c, std::min(k, d));
    const double nu_bound =
        bounds.lambda_max > 0.0
            ? std::max(0.0, bounds.lambda_min) / bounds.lambda_max
            : 0.0;
    std::cout << "spectral_nu_bound = " << fmt(nu_bound)
              << "  # lambda_min over lambda_max of the order-" << bounds.k
              << " sparse spectrum\n";
    if (!nu.has_value()) nu = nu_bound;
  } catch (const submax::ResourceError& e) {
    std::cout << "spectral_nu_bound = skipped (" << e.what() << ")\n";
  }

  if (gamma.has_value() && *gamma > 0.0) {
    std::cout << "\n"
              << submax::make_certificate(submax::CertificateKind::kGreedy,
                                          *gamma, std::nullopt, std::nullopt,
                                          opt_value)
                     .to_key_value_lines();
    if (delta.has_value()) {
      std::cout << "\n"
                << submax::make_certificate(
                       submax::CertificateKind::kStochastic, *gamma,
                       std::nullopt, delta, opt_value)
                       .to_key_value_lines();
    }
    if (nu.has_value()) {
      std::cout << "\n"
                << submax::make_certificate(
                       submax::CertificateKind::kDistributed, *gamma, nu,
                       std::nullopt, opt_value)
                       .to_key_value_lines();
    }
  } else {
    std::cout << "\ncertificates = skipped (no positive lower bound on the "
                 "submodularity ratio; consider supplying restricted "
                 "strong-concavity constants)\n";
  }
  return 0;
}

int do_synth(const std::string& out_path, const std::string& objective,
             int n, int d, int s, double alpha, double noise,
             std::uint64_t seed) {
  submax::ExperimentConfig config;
  config.objective = objective;
  config.n = n;
  config.d = d;
  config.s = s;
  config.alpha = alpha;
  config.noise = noise;
  config.seed = seed;
  // Matches the derivation in run_experiment, so `synth` writes exactly the
  // dataset a `run` with the same seed would draw.
  submax::RandomSource root(seed);
  submax::RandomSource data_rng = root.split();
  std::vector<int> support;
  if (objective == "regression") {
    const submax::SyntheticRegression syn =
        submax::generate_synthetic(config, data_rng);
    submax::write_regression_csv(out_path, syn.train.x, syn.train.y);
    support = syn.support;
  } else if (objective == "logistic") {
    const submax::SyntheticLogistic syn =
        submax::generate_synthetic_logistic(config, data_rng);
    submax::write_regression_csv(out_path, syn.x, syn.labels);
    support = syn.support;
  } else {
    throw submax::ConfigError(
        "objective must be 'regression' or 'logistic', got '" + objective +
        "'");
  }
  std::cout << "wrote = " << out_path << "\n";
  std::cout << "samples = " << n << "\n";
  std::cout << "features = " << d << "\n";
  std::cout << "support = " << submax::support_to_csv(support) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cardinality-constrained maximization of monotone set functions: "
      "greedy selection, ratio certificates, and experiment sweeps"};
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand(
      "run", "Run an experiment config and write metrics.csv plus a plot "
             "script");
  std::string run_config;
  std::string run_out;
  std::uint64_t run_seed = 0;
  int run_threads = 1;
  run_cmd->add_option("--config", run_config, "Config file (key = value)")
      ->required();
  run_cmd->add_option("--out", run_out, "Output directory")->required();
  CLI::Option* seed_opt =
      run_cmd->add_option("--seed", run_seed, "Override the config seed");
  CLI::Option* threads_opt = run_cmd->add_option(
      "--threads", run_threads, "Override the config worker-thread count");

  CLI::App* ratios_cmd = app.add_subcommand(
      "ratios", "Greedy selection on a regression CSV with ratio reports "
                "and approximation-bound certificates");
  std::string ratios_csv;
  int ratios_k = 0;
  double ratios_delta = 0.0;
  ratios_cmd
      ->add_option("--csv", ratios_csv,
                   "Regression CSV (features, response last)")
      ->required();
  ratios_cmd->add_option("--k", ratios_k, "Cardinality budget")->required();
  CLI::Option* delta_opt = ratios_cmd->add_option(
      "--delta", ratios_delta,
      "Also certify the subsampled greedy at this failure rate");

  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Write a synthetic dataset CSV");
  std::string synth_out;
  std::string synth_objective = "regression";
  int synth_n = 800;
  int synth_d = 1000;
  int synth_s = 100;
  double synth_alpha = 0.5;
  double synth_noise = 0.01;
  std::uint64_t synth_seed = 0;
  synth_cmd->add_option("--out", synth_out, "Output CSV path")->required();
  synth_cmd->add_option("--objective", synth_objective,
                        "regression or logistic");
  synth_cmd->add_option("--n", synth_n, "Samples");
  synth_cmd->add_option("--d", synth_d, "Features");
  synth_cmd->add_option("--s", synth_s, "True support size");
  synth_cmd->add_option("--alpha", synth_alpha,
                        "Autoregressive design parameter in (0, 1)");
  synth_cmd->add_option("--noise", synth_noise, "Response noise scale");
  synth_cmd->add_option("--seed", synth_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      return do_run(run_config, run_out,
                    seed_opt->count() > 0
                        ? std::optional<std::uint64_t>(run_seed)
                        : std::nullopt,
                    threads_opt->count() > 0 ? std::optional<int>(run_threads)
                                             : std::nullopt);
    }
    if (ratios_cmd->parsed()) {
      return do_ratios(ratios_csv, ratios_k,
                       delta_opt->count() > 0
                           ? std::optional<double>(ratios_delta)
                           : std::nullopt);
    }
    if (synth_cmd->parsed()) {
      return do_synth(synth_out, synth_objective, synth_n, synth_d, synth_s,
                      synth_alpha, synth_noise, synth_seed);
    }
  } catch (const submax::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const submax::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
