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

#ifndef SUBMAX_SUPPORT_SELECTION_HPP_
#define SUBMAX_SUPPORT_SELECTION_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "submax/ratios.hpp"
#include "submax/set_function.hpp"
#include "submax/sparse_eigen.hpp"

namespace submax {

// A smooth concave function g on R^d, queried by the support-selection
// oracle through values, gradients, and Hessian blocks restricted to a
// candidate support.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  int dimension() const { return dimension_; }

  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;

  // Performance hooks for points supported on `support` (sorted, duplicate
  // free; x is zero elsewhere). The defaults fall back to the full-space
  // maps; data-heavy objectives override with O(samples * |support|)
  // versions. Must agree with value()/gradient() on such points.
  virtual double value_on_support(const Eigen::VectorXd& x,
                                  SetView support) const;
  // Gradient coordinates on `support` only, as an |support|-vector.
  virtual Eigen::VectorXd gradient_on_support(const Eigen::VectorXd& x,
                                              SetView support) const;

  // Hessian of the restriction of g to `support` at x (supp(x) ⊆ support,
  // like the other hooks), an m x m block for m = |support|. The default
  // builds the block by central differences of the gradient; override with
  // the closed form.
  virtual Eigen::MatrixXd hessian_on_support(const Eigen::VectorXd& x,
                                             SetView support) const;

  // Writes the exact maximizer restricted to `support` (all other
  // coordinates zero) and returns true when a closed form exists. The
  // default reports none, sending the solver down the Newton path.
  virtual bool restricted_maximizer(SetView support, Eigen::VectorXd& out)
      const;

 protected:
  explicit SmoothObjective(int dimension);

 private:
  int dimension_;
};

// g(x) = -x'Ax/2 + b'x with A symmetric positive definite on the supports
// of interest. The restricted maximizer solves A_SS t = b_S exactly.
class QuadraticObjective final : public SmoothObjective {
 public:
  QuadraticObjective(Eigen::MatrixXd a, Eigen::VectorXd linear);

  const Eigen::MatrixXd& quadratic_term() const { return a_; }
  const Eigen::VectorXd& linear_term() const { return b_; }

  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd hessian_on_support(const Eigen::VectorXd& x,
                                     SetView support) const override;
  bool restricted_maximizer(SetView support, Eigen::VectorXd& out)
      const override;

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
};

// Log likelihood of a logistic model with +-1 labels:
//   g(x) = -sum_i log(1 + exp(-labels_i z_i'x)).
// Concave; g(0) = -n log 2.
class LogisticObjective final : public SmoothObjective {
 public:
  LogisticObjective(Eigen::MatrixXd features, Eigen::VectorXd labels);

  const Eigen::MatrixXd& features() const { return z_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  int samples() const { return static_cast<int>(z_.rows()); }

  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  double value_on_support(const Eigen::VectorXd& x,
                          SetView support) const override;
  Eigen::VectorXd gradient_on_support(const Eigen::VectorXd& x,
                                      SetView support) const override;
  Eigen::MatrixXd hessian_on_support(const Eigen::VectorXd& x,
                                     SetView support) const override;

 private:
  // Linear predictor using only the support columns: O(samples * |support|).
  Eigen::VectorXd predictor_on_support(const Eigen::VectorXd& x,
                                       SetView support) const;

  Eigen::MatrixXd z_;
  Eigen::VectorXd labels_;
};

struct InnerSolveOptions {
  // Restricted gradient norm below which the solve counts as converged.
  double tolerance = 1e-8;
  int max_iterations = 200;
};

struct InnerSolveReport {
  // Maximizer embedded in R^d; coordinates off the support are exactly zero.
  Eigen::VectorXd maximizer;
  // g at the maximizer (not shifted by g(0)).
  double objective_value = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
};

// max_x g(x) subject to supp(x) ⊆ support. Uses the closed-form restricted
// maximizer when the objective provides one, otherwise damped Newton with
// Armijo backtracking from `warm_start` (or zero). Throws ConvergenceError
// when the tolerance is not reached within the iteration cap.
InnerSolveReport maximize_on_support(const SmoothObjective& g, SetView support,
                                     const InnerSolveOptions& options = {},
                                     const Eigen::VectorXd* warm_start =
                                         nullptr);

// f(S) = max_{supp(x) ⊆ S} g(x) - g(0) for one set.
double support_value(const SmoothObjective& g, SetView support,
                     const InnerSolveOptions& options = {});

// f(S) = max_{supp(x) ⊆ S} g(x) - g(0) as a set-function oracle. Sessions
// warm start each candidate solve from the maximizer of the current
// selection.
class SupportObjective final : public SetFunctionOracle {
 public:
  SupportObjective(std::shared_ptr<const SmoothObjective> g,
                   InnerSolveOptions options = {});

  const SmoothObjective& smooth() const { return *g_; }
  const InnerSolveOptions& options() const { return options_; }

  double raw_value(SetView sorted) const override;
  std::unique_ptr<GainSession> make_session() const override;

 private:
  std::shared_ptr<const SmoothObjective> g_;
  InnerSolveOptions options_;
};

// Restricted strong-concavity and smoothness constants of a quadratic
// -x'Ax/2 + b'x at sparsity `order`: the extremal eigenvalues over all
// principal submatrices of A of that order (clamped to the dimension).
struct RestrictedConcavityBounds {
  double m = 0.0;  // strong concavity (smallest sparse eigenvalue)
  double l = 0.0;  // smoothness (largest sparse eigenvalue)
  int order = 0;
};

RestrictedConcavityBounds rsc_rsm_quadratic(const Eigen::MatrixXd& a,
                                            int order,
                                            std::uint64_t budget =
                                                kEnumerationBudget);

// Ratio lower bounds from restricted strong-concavity m and smoothness L:
// both the submodularity and the subadditivity ratio are at least m / L.
double gamma_lower_bound(double m, double l);
double nu_lower_bound(double m, double l);

// Certificates for all algorithms from one (m, L) pair: greedy and
// distributed always, stochastic when delta is given. `sparsity_order`
// stamps the order at which the constants were computed.
std::vector<BoundCertificate> combined_certificates(
    double m, double l, std::optional<double> delta, int sparsity_order);

// CSV with a header row, feature columns, and +-1 labels in the final
// column.
LogisticObjective load_logistic_csv(const std::string& path);

}  // namespace submax

#endif  // SUBMAX_SUPPORT_SELECTION_HPP_
