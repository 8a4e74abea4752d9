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

#ifndef SUBMAX_SPARSE_EIGEN_HPP_
#define SUBMAX_SPARSE_EIGEN_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "submax/ratios.hpp"

namespace submax {

struct SparseEigenBounds {
  int k = 0;
  // min over all k x k principal submatrices of the smallest eigenvalue,
  // and max over the same family of the largest.
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::vector<int> min_support;
  std::vector<int> max_support;
};

// Exact extremal eigenvalues over all C(d, k) principal submatrices of a
// symmetric matrix; witnesses are the first attaining supports in
// lexicographic order. Only the lower triangle of c is read. Throws
// ResourceError when C(d, k) exceeds the budget; quadratic objectives can
// fall back to restricted strong-concavity constants instead.
SparseEigenBounds sparse_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& c,
                                     int k,
                                     std::uint64_t budget =
                                         kEnumerationBudget);

}  // namespace submax

#endif  // SUBMAX_SPARSE_EIGEN_HPP_
