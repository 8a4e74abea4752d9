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

#include "submax/sparse_eigen.hpp"

#include <limits>
#include <string>

#include <Eigen/Dense>

#include "submax/errors.hpp"

namespace submax {

namespace {

std::uint64_t binomial_capped(int d, int k, std::uint64_t cap) {
  if (k < 0 || k > d) return 0;
  k = std::min(k, d - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    if (result > cap) return cap + 1;
    result = result * static_cast<std::uint64_t>(d - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return std::min(result, cap + 1);
}

}  // namespace

SparseEigenBounds sparse_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& c,
                                     int k, std::uint64_t budget) {
  const int d = static_cast<int>(c.rows());
  if (c.cols() != d) throw DomainError("matrix must be square");
  if (k < 1 || k > d) {
    throw DomainError("k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(d) + "]");
  }
  if (binomial_capped(d, k, budget) > budget) {
    throw ResourceError(
        "C(" + std::to_string(d) + ", " + std::to_string(k) +
        ") principal submatrices exceed the enumeration budget of " +
        std::to_string(budget) +
        "; for quadratic objectives use restricted strong-concavity "
        "constants instead of the exact scan");
  }

  SparseEigenBounds bounds;
  bounds.k = k;
  bounds.lambda_min = std::numeric_limits<double>::infinity();
  bounds.lambda_max = -std::numeric_limits<double>::infinity();

  std::vector<int> support(k);
  for (int i = 0; i < k; ++i) support[i] = i;
  Eigen::MatrixXd sub(k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (;;) {
    for (int col = 0; col < k; ++col) {
      for (int row = col; row < k; ++row) {
        sub(row, col) = c(support[row], support[col]);
      }
    }
    solver.compute(sub, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues()(0);
    const double hi = solver.eigenvalues()(k - 1);
    if (lo < bounds.lambda_min) {
      bounds.lambda_min = lo;
      bounds.min_support = support;
    }
    if (hi > bounds.lambda_max) {
      bounds.lambda_max = hi;
      bounds.max_support = support;
    }
    int i = k - 1;
    while (i >= 0 && support[i] == d - k + i) --i;
    if (i < 0) break;
    ++support[i];
    for (int j = i + 1; j < k; ++j) support[j] = support[j - 1] + 1;
  }
  return bounds;
}

}  // namespace submax
