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
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"

#include "common.hpp"
#include "submax/errors.hpp"
#include "submax/ratios.hpp"
#include "submax/regression.hpp"
#include "submax/set_function.hpp"
#include "submax/sparse_eigen.hpp"

using submax::BoundCertificate;
using submax::CertificateKind;
using submax::CoverageObjective;
using submax::DegenerateDataError;
using submax::DomainError;
using submax::ModularObjective;
using submax::RandomSource;
using submax::ResourceError;
using submax::all_subset_values;
using submax::brute_force_opt;
using submax::make_certificate;
using submax::subadditivity_ratio_k;
using submax::subadditivity_ratio_set;
using submax::submodularity_ratio_pair;
using submax::submodularity_ratio_uk;

namespace {

Eigen::VectorXd demo_weights() {
  Eigen::VectorXd w(4);
  w << 5.0, 3.0, 1.0, 4.0;
  return w;
}

// Reference minimum of the pair ratio over L ⊆ U, S ⊆ [d] \ L, 1 <= |S| <= k,
// enumerated in the opposite nesting order from the library scan.
double uk_reference(const submax::SetFunctionOracle& f,
                    const std::vector<int>& u, int k) {
  const int d = f.dimension();
  const auto values = all_subset_values(f);
  std::uint64_t u_mask = 0;
  for (int j : u) u_mask |= 1ULL << j;
  double best = std::numeric_limits<double>::infinity();
  // Descending S first, then L: the opposite nesting from the library scan.
  for (std::uint64_t s_mask = (1ULL << d) - 1; s_mask > 0; --s_mask) {
    if (__builtin_popcountll(s_mask) > k) continue;
    for (std::uint64_t l_mask = u_mask;; l_mask = (l_mask - 1) & u_mask) {
      if ((l_mask & s_mask) == 0) {
        double numer = 0.0;
        for (int j = 0; j < d; ++j) {
          if (s_mask & (1ULL << j)) {
            numer += values[l_mask | (1ULL << j)] - values[l_mask];
          }
        }
        const double denom = values[l_mask | s_mask] - values[l_mask];
        // Same zero-denominator convention as the library: 0/0 counts as 1,
        // gain over a vanishing denominator never attains the minimum.
        double ratio = 1.0;
        if (denom > submax::kValueTol) {
          ratio = numer / denom;
        } else if (numer > submax::kValueTol) {
          ratio = std::numeric_limits<double>::infinity();
        }
        best = std::min(best, ratio);
      }
      if (l_mask == 0) break;
    }
  }
  return best;
}

// Reference minimum of the two-block partition ratio over all |S| = k,
// enumerated in descending mask order.
double nu_k_reference(const submax::SetFunctionOracle& f, int k) {
  const int d = f.dimension();
  const auto values = all_subset_values(f);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s_mask = (1ULL << d) - 1; s_mask > 0; --s_mask) {
    if (__builtin_popcountll(s_mask) != k) continue;
    if (values[s_mask] <= submax::kValueTol) continue;
    for (std::uint64_t a = s_mask;; a = (a - 1) & s_mask) {
      const double ratio =
          (values[a] + values[s_mask & ~a]) / values[s_mask];
      best = std::min(best, ratio);
      if (a == 0) break;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("ratios") {

TEST_CASE("pair ratio doubles when two elements cover the same item") {
  CoverageObjective f(2, {1ULL, 1ULL});
  const std::vector<int> empty;
  CHECK(submodularity_ratio_pair(f, empty, std::vector<int>{0, 1}) ==
        doctest::Approx(2.0));
}

TEST_CASE("pair ratio is exactly one for modular objectives") {
  ModularObjective f(demo_weights());
  CHECK(submodularity_ratio_pair(f, std::vector<int>{1},
                                 std::vector<int>{0, 3}) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pair ratio treats a vanishing denominator as neutral") {
  // Element 1 covers a subset of what element 0 covers: after L = {0} both
  // the numerator and denominator for S = {1} vanish.
  CoverageObjective f(2, {3ULL, 1ULL});
  CHECK(submodularity_ratio_pair(f, std::vector<int>{0},
                                 std::vector<int>{1}) ==
        doctest::Approx(1.0));
}

TEST_CASE("pair ratio validates disjointness") {
  ModularObjective f(demo_weights());
  CHECK_THROWS_AS(submodularity_ratio_pair(f, std::vector<int>{0},
                                           std::vector<int>{0, 1}),
                  DomainError);
  CHECK_THROWS_AS(
      submodularity_ratio_pair(f, std::vector<int>{0}, std::vector<int>{}),
      DomainError);
}

TEST_CASE("scan over L and S is exactly one for modular objectives") {
  RandomSource rng(31);
  ModularObjective f(submax_tests::random_weights(7, rng));
  const auto report =
      submodularity_ratio_uk(f, std::vector<int>{0, 2, 4, 6}, 3);
  CHECK(report.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.scope == submax::RatioScope::kSetVsK);
}

TEST_CASE("submodular objectives have ratio at least one") {
  RandomSource rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 4 + static_cast<int>(rng.uniform_int(4));
    CoverageObjective f(d, submax_tests::random_covers(d, 9, rng));
    const auto u = submax_tests::random_subset(
        d, 2 + static_cast<int>(rng.uniform_int(d - 2)), rng);
    const auto report = submodularity_ratio_uk(f, u, 2);
    CHECK(report.value >= 1.0 - 1e-12);
  }
}

TEST_CASE("scan minimum matches an independent enumeration") {
  RandomSource rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 4 + static_cast<int>(rng.uniform_int(3));
    const auto instance = submax_tests::random_instance(d + 4, d, rng);
    submax::RSquaredObjective f(instance);
    std::vector<int> u(d);
    for (int i = 0; i < d; ++i) u[i] = i;
    const int k = 1 + static_cast<int>(rng.uniform_int(3));
    const auto report = submodularity_ratio_uk(f, u, k);
    const double reference = uk_reference(f, u, k);
    CHECK(report.value == doctest::Approx(reference).epsilon(1e-12));
    // The witness pair reproduces the reported ratio.
    CHECK(submodularity_ratio_pair(f, report.witness_first,
                                   report.witness_second) ==
          doctest::Approx(report.value).epsilon(1e-12));
  }
}

TEST_CASE("ratio scans respect the dimension cap") {
  submax::CardinalityObjective f(15);
  CHECK_THROWS_AS(all_subset_values(f), ResourceError);
  std::vector<int> u(15);
  for (int i = 0; i < 15; ++i) u[i] = i;
  CHECK_THROWS_AS(submodularity_ratio_uk(f, u, 2), ResourceError);
}

TEST_CASE("subset value table is indexed by bit mask") {
  ModularObjective f(demo_weights());
  const auto values = all_subset_values(f);
  REQUIRE(values.size() == 16);
  CHECK(values[0] == doctest::Approx(0.0));
  CHECK(values[0b1001] == doctest::Approx(9.0));
  CHECK(values[0b0110] == doctest::Approx(4.0));
  CHECK(values[0b1111] == doctest::Approx(13.0));
}

TEST_CASE("partition ratio of a modular objective is exactly one") {
  ModularObjective f(demo_weights());
  const auto report = subadditivity_ratio_set(f, std::vector<int>{0, 2, 3});
  CHECK(report.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(report.scope == submax::RatioScope::kSet);
}

TEST_CASE("partition ratio is at least one for submodular objectives") {
  RandomSource rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 4 + static_cast<int>(rng.uniform_int(4));
    CoverageObjective f(d, submax_tests::random_covers(d, 9, rng));
    const auto s = submax_tests::random_subset(d, 3, rng);
    try {
      CHECK(subadditivity_ratio_set(f, s).value >= 1.0 - 1e-12);
    } catch (const DegenerateDataError&) {
      // All covers in S empty: the ratio is undefined, which is fine.
    }
  }
}

TEST_CASE("partition ratio rejects sets with vanishing value") {
  ModularObjective f(Eigen::VectorXd::Zero(3));
  CHECK_THROWS_AS(subadditivity_ratio_set(f, std::vector<int>{0, 1}),
                  DegenerateDataError);
}

TEST_CASE("size-k partition ratio matches an independent enumeration") {
  RandomSource rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 4 + static_cast<int>(rng.uniform_int(3));
    const auto instance = submax_tests::random_instance(d + 5, d, rng);
    submax::RSquaredObjective f(instance);
    const int k = 2 + static_cast<int>(rng.uniform_int(2));
    const auto report = subadditivity_ratio_k(f, k);
    CHECK(report.value == doctest::Approx(nu_k_reference(f, k)).epsilon(1e-12));
    CHECK(static_cast<int>(report.witness_set.size()) == k);
    // The witness partition reproduces the reported ratio.
    const auto again = subadditivity_ratio_set(f, report.witness_set);
    CHECK(again.value == doctest::Approx(report.value).epsilon(1e-12));
  }
}

TEST_CASE("size-k partition scan honors its enumeration budget") {
  submax::CardinalityObjective f(14);
  CHECK_THROWS_AS(subadditivity_ratio_k(f, 7, 10), ResourceError);
}

TEST_CASE("brute force optimum finds the top modular weights") {
  ModularObjective f(demo_weights());
  const auto opt = brute_force_opt(f, 2);
  CHECK(opt.set == std::vector<int>{0, 3});
  CHECK(opt.value == doctest::Approx(9.0));
}

TEST_CASE("brute force optimum breaks ties lexicographically") {
  submax::CardinalityObjective f(4);
  const auto opt = brute_force_opt(f, 2);
  CHECK(opt.set == std::vector<int>{0, 1});
  CHECK(opt.value == doctest::Approx(2.0));
}

TEST_CASE("brute force optimum honors its budget") {
  submax::CardinalityObjective f(14);
  CHECK_THROWS_AS(brute_force_opt(f, 7, 100), ResourceError);
}

TEST_CASE("certificate factors match their closed forms") {
  const auto greedy = make_certificate(CertificateKind::kGreedy, 1.0);
  CHECK(greedy.factor == doctest::Approx(0.632120558829).epsilon(1e-12));

  const auto stoch = make_certificate(CertificateKind::kStochastic, 1.0,
                                      std::nullopt, 0.1);
  CHECK(stoch.factor == doctest::Approx(0.532120558829).epsilon(1e-12));

  const auto dist =
      make_certificate(CertificateKind::kDistributed, 1.0, 1.0);
  CHECK(dist.factor == doctest::Approx(0.316060279414).epsilon(1e-12));

  // Concavity ratio m/L = 1/2 feeding both constants.
  const auto half =
      make_certificate(CertificateKind::kDistributed, 0.5, 0.5);
  CHECK(half.factor ==
        doctest::Approx(0.25 * (1.0 - std::exp(-0.5))).epsilon(1e-15));
  CHECK(half.factor == doctest::Approx(0.0983673350718).epsilon(1e-12));
}

TEST_CASE("certificate factors are clamped to the unit interval") {
  const auto tiny = make_certificate(CertificateKind::kStochastic, 0.01,
                                     std::nullopt, 0.99);
  CHECK(tiny.factor == doctest::Approx(0.0));
  CHECK(tiny.factor >= 0.0);
}

TEST_CASE("certificates validate their inputs") {
  CHECK_THROWS_AS(make_certificate(CertificateKind::kGreedy, 0.0),
                  DomainError);
  CHECK_THROWS_AS(make_certificate(CertificateKind::kGreedy, -1.0),
                  DomainError);
  CHECK_THROWS_AS(make_certificate(CertificateKind::kStochastic, 1.0),
                  DomainError);
  CHECK_THROWS_AS(make_certificate(CertificateKind::kStochastic, 1.0,
                                   std::nullopt, 1.5),
                  DomainError);
  CHECK_THROWS_AS(make_certificate(CertificateKind::kDistributed, 1.0),
                  DomainError);
}

TEST_CASE("certificates and ratio reports print key-value lines") {
  const auto cert = make_certificate(CertificateKind::kStochastic, 0.8,
                                     std::nullopt, 0.2, 0.9);
  const std::string text = cert.to_key_value_lines();
  CHECK(text.find("certificate = stochastic") != std::string::npos);
  CHECK(text.find("gamma = ") != std::string::npos);
  CHECK(text.find("delta = ") != std::string::npos);
  CHECK(text.find("factor = ") != std::string::npos);
  CHECK(text.find("opt_value = ") != std::string::npos);

  ModularObjective f(demo_weights());
  const auto report = subadditivity_ratio_set(f, std::vector<int>{0, 1});
  const std::string lines = report.to_key_value_lines();
  CHECK(lines.find("ratio_scope = ") != std::string::npos);
  CHECK(lines.find("ratio_value = ") != std::string::npos);
}

TEST_CASE("sparse eigenvalue bounds on a two-by-two correlation matrix") {
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 0.5, 0.5, 1.0;
  const auto bounds = submax::sparse_eigenvalues(c, 2);
  CHECK(bounds.lambda_min == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bounds.lambda_max == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(bounds.min_support == std::vector<int>{0, 1});
  CHECK(bounds.max_support == std::vector<int>{0, 1});
}

TEST_CASE("sparse eigenvalue bounds of order one scan the diagonal") {
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 0.0, 0.0, 2.0;
  const auto bounds = submax::sparse_eigenvalues(c, 1);
  CHECK(bounds.lambda_min == doctest::Approx(1.0));
  CHECK(bounds.lambda_max == doctest::Approx(2.0));
  CHECK(bounds.min_support == std::vector<int>{0});
  CHECK(bounds.max_support == std::vector<int>{1});
}

TEST_CASE("sparse eigenvalue scans validate and honor the budget") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(30, 30);
  CHECK_THROWS_AS(submax::sparse_eigenvalues(c, 15), ResourceError);
  CHECK_THROWS_AS(submax::sparse_eigenvalues(c, 0), DomainError);
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(submax::sparse_eigenvalues(rect, 1), DomainError);
}

}  // TEST_SUITE
