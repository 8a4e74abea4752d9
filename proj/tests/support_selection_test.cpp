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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"

#include "common.hpp"
#include "submax/errors.hpp"
#include "submax/greedy.hpp"
#include "submax/ratios.hpp"
#include "submax/support_selection.hpp"

using submax::ConvergenceError;
using submax::DomainError;
using submax::InnerSolveOptions;
using submax::LogisticObjective;
using submax::QuadraticObjective;
using submax::RandomSource;
using submax::SupportObjective;
using submax::maximize_on_support;
using submax::rsc_rsm_quadratic;
using submax::support_value;

namespace {

// Random logistic problem with +-1 labels drawn from the model.
std::shared_ptr<LogisticObjective> random_logistic(int n, int d,
                                                   RandomSource& rng) {
  Eigen::MatrixXd z = submax_tests::random_matrix(n, d, rng);
  Eigen::VectorXd beta = submax_tests::random_vector(d, rng) / std::sqrt(d);
  Eigen::VectorXd labels(n);
  for (int i = 0; i < n; ++i) {
    const double p = 1.0 / (1.0 + std::exp(-z.row(i).dot(beta)));
    labels(i) = rng.uniform01() < p ? 1.0 : -1.0;
  }
  return std::make_shared<LogisticObjective>(std::move(z), std::move(labels));
}

// Reference solve by plain gradient ascent with a tiny fixed step. Slow but
// independent of the Newton path.
Eigen::VectorXd ascent_reference(const submax::SmoothObjective& g,
                                 const std::vector<int>& support,
                                 double step, int iterations) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(g.dimension());
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd grad = g.gradient(x);
    for (int j : support) x(j) += step * grad(j);
  }
  return x;
}

}  // namespace

TEST_SUITE("support_selection") {

TEST_CASE("diagonal quadratic support values have a closed form") {
  Eigen::MatrixXd a = Eigen::Vector3d(2.0, 1.0, 4.0).asDiagonal();
  const Eigen::Vector3d b(2.0, 3.0, 0.0);
  QuadraticObjective g(a, b);
  // f({i}) = b_i^2 / (2 a_ii).
  CHECK(support_value(g, std::vector<int>{0}) == doctest::Approx(1.0));
  CHECK(support_value(g, std::vector<int>{1}) == doctest::Approx(4.5));
  CHECK(support_value(g, std::vector<int>{2}) == doctest::Approx(0.0));
  CHECK(support_value(g, std::vector<int>{0, 1}) == doctest::Approx(5.5));
}

TEST_CASE("quadratic restricted maximizer solves the support block exactly") {
  RandomSource rng(3);
  const Eigen::MatrixXd a = submax_tests::random_spd(5, rng);
  const Eigen::VectorXd b = submax_tests::random_vector(5, rng);
  QuadraticObjective g(a, b);
  const std::vector<int> s{0, 2, 4};
  const auto report = maximize_on_support(g, s);
  Eigen::MatrixXd ass(3, 3);
  Eigen::VectorXd bs(3);
  for (int i = 0; i < 3; ++i) {
    bs(i) = b(s[i]);
    for (int j = 0; j < 3; ++j) ass(i, j) = a(s[i], s[j]);
  }
  const Eigen::VectorXd t = ass.llt().solve(bs);
  for (int i = 0; i < 3; ++i) {
    CHECK(report.maximizer(s[i]) == doctest::Approx(t(i)).epsilon(1e-10));
  }
  CHECK(report.maximizer(1) == 0.0);
  CHECK(report.maximizer(3) == 0.0);
  CHECK(report.iterations == 0);
}

TEST_CASE("support oracle is normalized and monotone") {
  RandomSource rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 4 + static_cast<int>(rng.uniform_int(3));
    auto quad = std::make_shared<QuadraticObjective>(
        submax_tests::random_spd(d, rng), submax_tests::random_vector(d, rng));
    SupportObjective f(quad);
    CHECK(f.evaluate({}) == 0.0);
    for (int pair = 0; pair < 6; ++pair) {
      const auto t = submax_tests::random_subset(
          d, 1 + static_cast<int>(rng.uniform_int(d)), rng);
      if (t.empty()) continue;
      auto s = t;
      s.erase(s.begin() + static_cast<long>(rng.uniform_int(s.size())));
      const double fs = f.evaluate(s);
      const double ft = f.evaluate(t);
      CHECK(ft >= fs - 1e-7);
    }
  }
}

TEST_CASE("logistic gradients match finite differences") {
  RandomSource rng(11);
  auto g = random_logistic(40, 6, rng);
  for (int trial = 0; trial < 100; ++trial) {
    const auto support = submax_tests::random_subset(
        6, 1 + static_cast<int>(rng.uniform_int(4)), rng);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
    for (int j : support) x(j) = rng.normal();
    const Eigen::VectorXd grad = g->gradient(x);
    const int j = support[rng.uniform_int(support.size())];
    const double h = 1e-5;
    Eigen::VectorXd lo = x, hi = x;
    lo(j) -= h;
    hi(j) += h;
    const double fd = (g->value(hi) - g->value(lo)) / (2.0 * h);
    const double scale = std::max(1.0, std::abs(grad(j)));
    CHECK(std::abs(grad(j) - fd) / scale <= 1e-5);
  }
}

TEST_CASE("support hooks agree with the full-space maps") {
  RandomSource rng(13);
  auto g = random_logistic(30, 5, rng);
  const std::vector<int> support{1, 3, 4};
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  for (int j : support) x(j) = rng.normal();
  CHECK(g->value_on_support(x, support) ==
        doctest::Approx(g->value(x)).epsilon(1e-12));
  const Eigen::VectorXd full = g->gradient(x);
  const Eigen::VectorXd restricted = g->gradient_on_support(x, support);
  REQUIRE(restricted.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(restricted(i) == doctest::Approx(full(support[i])).epsilon(1e-12));
  }
  // The Hessian block matches central differences of the gradient.
  const Eigen::MatrixXd hess = g->hessian_on_support(x, support);
  REQUIRE(hess.rows() == 3);
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd lo = x, hi = x;
    lo(support[i]) -= h;
    hi(support[i]) += h;
    const Eigen::VectorXd dg = (g->gradient(hi) - g->gradient(lo)) / (2.0 * h);
    for (int j = 0; j < 3; ++j) {
      CHECK(hess(i, j) == doctest::Approx(dg(support[j])).epsilon(5e-4));
    }
  }
}

TEST_CASE("logistic objectives are concave along random segments") {
  RandomSource rng(17);
  auto g = random_logistic(25, 4, rng);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd a = submax_tests::random_vector(4, rng);
    const Eigen::VectorXd b = submax_tests::random_vector(4, rng);
    const double mid = g->value((a + b) / 2.0);
    CHECK(mid >= (g->value(a) + g->value(b)) / 2.0 - 1e-10);
  }
}

TEST_CASE("Newton solves match a long-run first-order reference") {
  RandomSource rng(19);
  auto g = random_logistic(60, 6, rng);
  const std::vector<int> support{1, 4};
  const auto report = maximize_on_support(*g, support);
  CHECK(report.gradient_norm <= 1e-8);
  const Eigen::VectorXd slow = ascent_reference(*g, support, 0.02, 60000);
  CHECK(report.objective_value >= g->value(slow) - 1e-9);
  CHECK(std::abs(report.objective_value - g->value(slow)) <= 1e-6);
  for (int j : {0, 2, 3, 5}) CHECK(report.maximizer(j) == 0.0);
}

TEST_CASE("inner solves respect warm starts and stay on the support") {
  RandomSource rng(23);
  auto g = random_logistic(50, 5, rng);
  const std::vector<int> support{0, 2};
  const auto cold = maximize_on_support(*g, support);
  const auto warm = maximize_on_support(*g, support, {}, &cold.maximizer);
  CHECK(warm.objective_value ==
        doctest::Approx(cold.objective_value).epsilon(1e-10));
  CHECK(warm.iterations <= cold.iterations);
}

TEST_CASE("inner solver reports an honest convergence failure") {
  RandomSource rng(29);
  auto g = random_logistic(50, 5, rng);
  InnerSolveOptions strict;
  strict.tolerance = 1e-8;
  strict.max_iterations = 1;  // logistic solves need several Newton steps
  CHECK_THROWS_AS((void)maximize_on_support(*g, std::vector<int>{0, 1}, strict),
                  ConvergenceError);
  InnerSolveOptions invalid;
  invalid.max_iterations = 0;
  CHECK_THROWS_AS(
      (void)maximize_on_support(*g, std::vector<int>{0, 1}, invalid),
      DomainError);
}

TEST_CASE("support sessions replay greedy gains consistently") {
  RandomSource rng(31);
  auto quad = std::make_shared<QuadraticObjective>(
      submax_tests::random_spd(6, rng), submax_tests::random_vector(6, rng));
  SupportObjective f(quad);
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  const auto trace = submax::greedy(f, all, 3);
  std::vector<int> chosen;
  for (const auto& step : trace.steps) {
    const double direct =
        support_value(*quad, submax::with_element(chosen, step.element)) -
        (chosen.empty() ? 0.0 : support_value(*quad, chosen));
    CHECK(step.gain == doctest::Approx(direct).epsilon(1e-7));
    chosen = submax::with_element(chosen, step.element);
  }
  CHECK(trace.total_evaluations() == 3u * 6u - 3u);
}

TEST_CASE("restricted concavity constants of a diagonal quadratic are its "
          "extreme entries") {
  Eigen::MatrixXd a = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  const auto order1 = rsc_rsm_quadratic(a, 1);
  CHECK(order1.m == doctest::Approx(1.0));
  CHECK(order1.l == doctest::Approx(2.0));
  CHECK(order1.order == 1);
  const auto identity = rsc_rsm_quadratic(Eigen::MatrixXd::Identity(3, 3), 2);
  CHECK(identity.m == doctest::Approx(1.0));
  CHECK(identity.l == doctest::Approx(1.0));
}

TEST_CASE("restricted concavity order is clamped to the dimension") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.5, 0.5, 1.0;
  const auto bounds = rsc_rsm_quadratic(a, 5);
  CHECK(bounds.order == 2);
  CHECK(bounds.m == doctest::Approx(0.5));
  CHECK(bounds.l == doctest::Approx(1.5));
}

TEST_CASE("ratio bounds from concavity constants are m over L") {
  CHECK(submax::gamma_lower_bound(1.0, 2.0) == doctest::Approx(0.5));
  CHECK(submax::nu_lower_bound(1.0, 2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(submax::gamma_lower_bound(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(submax::nu_lower_bound(2.0, 1.0), DomainError);
}

TEST_CASE("combined certificates cover each algorithm with one constant "
          "pair") {
  const auto with_delta = submax::combined_certificates(1.0, 2.0, 0.1, 4);
  REQUIRE(with_delta.size() == 3);
  CHECK(with_delta[0].kind == submax::CertificateKind::kGreedy);
  CHECK(with_delta[1].kind == submax::CertificateKind::kStochastic);
  CHECK(with_delta[2].kind == submax::CertificateKind::kDistributed);
  for (const auto& cert : with_delta) {
    CHECK(cert.gamma == doctest::Approx(0.5));
    CHECK(cert.sparsity_order == 4);
  }
  CHECK(with_delta[0].factor ==
        doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-15));
  CHECK(with_delta[2].factor ==
        doctest::Approx(0.0983673350718).epsilon(1e-12));

  const auto without = submax::combined_certificates(1.0, 2.0, std::nullopt, 4);
  REQUIRE(without.size() == 2);
  CHECK(without[0].kind == submax::CertificateKind::kGreedy);
  CHECK(without[1].kind == submax::CertificateKind::kDistributed);
}

TEST_CASE("sandwich bounds pin support values between gradient norms") {
  RandomSource rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + static_cast<int>(rng.uniform_int(3));
    const Eigen::MatrixXd a = submax_tests::random_spd(d, rng, 0.2);
    const Eigen::VectorXd b = submax_tests::random_vector(d, rng);
    QuadraticObjective g(a, b);
    const auto s = submax_tests::random_subset(
        d, 1 + static_cast<int>(rng.uniform_int(d)), rng);
    const auto bounds = rsc_rsm_quadratic(a, static_cast<int>(s.size()));
    double grad_sq = 0.0;
    for (int j : s) grad_sq += b(j) * b(j);  // gradient at zero is b
    const double f = support_value(g, s);
    CHECK(f >= grad_sq / (2.0 * bounds.l) - 1e-9);
    CHECK(f <= grad_sq / (2.0 * bounds.m) + 1e-9);
  }
}

TEST_CASE("quadratic support oracles respect the spectral ratio bounds") {
  RandomSource rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 4;
    const Eigen::MatrixXd a = submax_tests::random_spd(d, rng, 0.3);
    auto quad = std::make_shared<QuadraticObjective>(
        a, submax_tests::random_vector(d, rng));
    SupportObjective f(quad);
    const auto global = rsc_rsm_quadratic(a, d);
    const double bound = global.m / global.l;
    const std::vector<int> all{0, 1, 2, 3};
    const auto gamma = submax::submodularity_ratio_uk(f, all, 2);
    CHECK(gamma.value >= bound - 1e-7);
    const auto nu = submax::subadditivity_ratio_k(f, 2);
    CHECK(nu.value >= bound - 1e-7);
  }
}

TEST_CASE("logistic CSV loads validate labels") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "submax_logit.csv";
  {
    std::FILE* out = std::fopen(path.string().c_str(), "w");
    REQUIRE(out != nullptr);
    std::fputs("f0,f1,label\n0.5,1.0,1\n-0.25,0.75,-1\n", out);
    std::fclose(out);
  }
  const LogisticObjective g = submax::load_logistic_csv(path.string());
  CHECK(g.samples() == 2);
  CHECK(g.dimension() == 2);
  CHECK(g.labels()(0) == 1.0);
  CHECK(g.labels()(1) == -1.0);
  {
    std::FILE* out = std::fopen(path.string().c_str(), "w");
    REQUIRE(out != nullptr);
    std::fputs("f0,label\n0.5,2\n", out);
    std::fclose(out);
  }
  CHECK_THROWS_AS((void)submax::load_logistic_csv(path.string()),
                  submax::ConfigError);
  fs::remove(path);
}

}  // TEST_SUITE
