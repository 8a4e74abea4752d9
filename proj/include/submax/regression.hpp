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

#ifndef SUBMAX_REGRESSION_HPP_
#define SUBMAX_REGRESSION_HPP_

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "submax/set_function.hpp"
#include "submax/sparse_eigen.hpp"

namespace submax {

// Pivot below which an added column counts as linearly dependent on the
// current selection and contributes zero gain.
inline constexpr double kPivotTol = 1e-10;

// A fixed design X (n x d), response y, and the Gram matrix C = X'X with
// correlations b = X'y, both computed once at construction. After
// normalize(), columns and y have unit norm, so f(S) = |P_S y|^2 lies in
// [0, 1] and depends on the data only through C and b.
struct RegressionInstance {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd c;
  Eigen::VectorXd b;

  RegressionInstance(Eigen::MatrixXd design, Eigen::VectorXd response);

  int samples() const { return static_cast<int>(x.rows()); }
  int dimension() const { return static_cast<int>(x.cols()); }
};

// Scales columns and the response to unit norm and recomputes C and b.
// Columns already within 1e-12 of unit norm are left untouched, so the map
// is idempotent bit for bit. Throws DegenerateDataError, naming the column,
// when a column or the response has (near) zero norm.
RegressionInstance normalize(const RegressionInstance& instance);

// Incremental Cholesky factorization of the Gram matrix of an ordered column
// selection, tracking |P_S y|^2. Adding a column extends the factor by one
// row (O(|S|^2)); columns whose pivot falls below the tolerance are recorded
// but span nothing and add zero. One full greedy sweep through d candidates
// therefore costs O(k^2 d) on top of the one-time O(nd^2) Gram computation.
class CholeskyProjection {
 public:
  CholeskyProjection(const Eigen::MatrixXd& gram,
                     const Eigen::VectorXd& correlations,
                     double pivot_tol = kPivotTol);

  struct Gain {
    double value = 0.0;
    bool independent = true;
  };
  // Gain in |P_S y|^2 from adding column j; the factor is unchanged.
  Gain peek(int j) const;
  // Commits column j.
  void add(int j);

  double value() const { return value_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<int>& columns() const { return columns_; }
  const std::vector<int>& basis() const { return basis_; }
  // Least-squares coefficients embedded in R^d; dependent columns get zero.
  Eigen::VectorXd coefficients() const;

 private:
  void solve_column(int j, Eigen::VectorXd& w, double& pivot,
                    double& residual) const;

  const Eigen::MatrixXd* gram_;
  const Eigen::VectorXd* corr_;
  double pivot_tol_;
  Eigen::MatrixXd l_;      // lower-triangular factor of the basis Gram
  Eigen::VectorXd z_;      // L^{-1} b restricted to the basis
  std::vector<int> columns_;
  std::vector<int> basis_;
  double value_ = 0.0;
};

// |P_S y|^2 for one subset, via the incremental factorization.
double r2_value(const RegressionInstance& instance, SetView s);

// f(S) = |P_S y|^2 as a set-function oracle. Sessions extend a shared
// factorization snapshot one candidate at a time, so a greedy sweep avoids
// refactorizing from scratch; evaluate() rebuilds and stays the reference
// path.
class RSquaredObjective final : public SetFunctionOracle {
 public:
  explicit RSquaredObjective(RegressionInstance instance);
  explicit RSquaredObjective(std::shared_ptr<const RegressionInstance> shared);

  const RegressionInstance& instance() const { return *instance_; }

  double raw_value(SetView sorted) const override;
  std::unique_ptr<GainSession> make_session() const override;

 private:
  std::shared_ptr<const RegressionInstance> instance_;
};

// Submodularity-ratio lower bound from the sparse spectrum of C: the
// smallest eigenvalue over all principal submatrices of order
// min(d, k + |S|).
double gamma_lower_bound(const RegressionInstance& instance, SetView s, int k,
                         std::uint64_t budget = kEnumerationBudget);

// Subadditivity-ratio lower bound for one set: lambda_min(C_S) over
// lambda_max(C_S), clamped below at zero. Throws DegenerateDataError when
// lambda_max vanishes.
double nu_lower_bound(const RegressionInstance& instance, SetView s);

// Orthogonal matching pursuit: each step picks the candidate with the
// largest absolute residual correlation, then refits. The trace records the
// fitted |P_S y|^2 after each step; `evaluations` counts refits (one per
// step). Candidate set defaults to all columns.
SelectionTrace omp_select(const RegressionInstance& instance, int k,
                          SetView candidates = {});

// CSV with a header row, feature columns, and the response in the final
// column.
RegressionInstance load_regression_csv(const std::string& path);
void write_regression_csv(const std::string& path, const Eigen::MatrixXd& x,
                          const Eigen::VectorXd& y);

// Comma-separated support indices, e.g. "0,3,7".
std::string support_to_csv(SetView s);
std::vector<int> support_from_csv(const std::string& text);

}  // namespace submax

#endif  // SUBMAX_REGRESSION_HPP_
