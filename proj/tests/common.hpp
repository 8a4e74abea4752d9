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

#ifndef SUBMAX_TESTS_COMMON_HPP_
#define SUBMAX_TESTS_COMMON_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "submax/random_source.hpp"
#include "submax/regression.hpp"
#include "submax/set_function.hpp"

namespace submax_tests {

inline Eigen::MatrixXd random_matrix(int rows, int cols,
                                     submax::RandomSource& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

inline Eigen::VectorXd random_vector(int size, submax::RandomSource& rng) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = rng.normal();
  return v;
}

// Nonnegative weights, so the modular objective is monotone.
inline Eigen::VectorXd random_weights(int d, submax::RandomSource& rng) {
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w(i) = 10.0 * rng.uniform01();
  return w;
}

// Random cover masks over a universe of `universe` items; empty covers are
// allowed.
inline std::vector<std::uint64_t> random_covers(int d, int universe,
                                                submax::RandomSource& rng) {
  std::vector<std::uint64_t> covers(d);
  const std::uint64_t mask =
      universe >= 64 ? ~0ULL : ((1ULL << universe) - 1);
  for (int j = 0; j < d; ++j) covers[j] = rng.next() & mask;
  return covers;
}

// Normalized Gaussian regression instance.
inline std::shared_ptr<const submax::RegressionInstance> random_instance(
    int n, int d, submax::RandomSource& rng) {
  return std::make_shared<const submax::RegressionInstance>(
      submax::normalize(submax::RegressionInstance(random_matrix(n, d, rng),
                                                   random_vector(n, rng))));
}

// Symmetric positive definite matrix with smallest eigenvalue at least
// `ridge`.
inline Eigen::MatrixXd random_spd(int d, submax::RandomSource& rng,
                                  double ridge = 0.1) {
  const Eigen::MatrixXd g = random_matrix(d, d, rng);
  Eigen::MatrixXd a = g.transpose() * g / static_cast<double>(d);
  a = ((a + a.transpose()) / 2.0).eval();
  a.diagonal().array() += ridge;
  return a;
}

// Uniformly random sorted subset of size m of {0, ..., d-1}.
inline std::vector<int> random_subset(int d, int m,
                                      submax::RandomSource& rng) {
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  for (int i = 0; i < m; ++i) {
    const int j = i + static_cast<int>(
                          rng.uniform_int(static_cast<std::uint64_t>(d - i)));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> out(perm.begin(), perm.begin() + m);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace submax_tests

#endif  // SUBMAX_TESTS_COMMON_HPP_
