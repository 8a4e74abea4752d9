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

#include "submax/regression.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include <Eigen/Dense>

#include "submax/errors.hpp"
#include "submax/strings.hpp"

namespace submax {

namespace {

// Column norms within this distance of 1 are left unscaled, so normalize()
// is idempotent bit for bit.
constexpr double kUnitNormTol = 1e-12;

}  // namespace

RegressionInstance::RegressionInstance(Eigen::MatrixXd design,
                                       Eigen::VectorXd response)
    : x(std::move(design)), y(std::move(response)) {
  if (x.rows() < 1 || x.cols() < 1) {
    throw DomainError("design matrix must have at least one row and column");
  }
  if (y.size() != x.rows()) {
    throw DomainError("response length " + std::to_string(y.size()) +
                      " does not match sample count " +
                      std::to_string(x.rows()));
  }
  const auto d = x.cols();
  c.setZero(d, d);
  c.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
  // Mirror so both triangles hold the exact same numbers.
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  b.noalias() = x.transpose() * y;
}

RegressionInstance normalize(const RegressionInstance& instance) {
  Eigen::MatrixXd x = instance.x;
  Eigen::VectorXd y = instance.y;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (norm <= kUnitNormTol) {
      throw DegenerateDataError("column " + std::to_string(j) +
                                " has zero norm and cannot be scaled to unit "
                                "length");
    }
    if (std::abs(norm - 1.0) > kUnitNormTol) x.col(j) /= norm;
  }
  const double ynorm = y.norm();
  if (ynorm <= kUnitNormTol) {
    throw DegenerateDataError(
        "response has zero norm and cannot be scaled to unit length");
  }
  if (std::abs(ynorm - 1.0) > kUnitNormTol) y /= ynorm;
  return RegressionInstance(std::move(x), std::move(y));
}

CholeskyProjection::CholeskyProjection(const Eigen::MatrixXd& gram,
                                       const Eigen::VectorXd& correlations,
                                       double pivot_tol)
    : gram_(&gram), corr_(&correlations), pivot_tol_(pivot_tol) {
  if (gram.rows() != gram.cols()) {
    throw DomainError("Gram matrix must be square");
  }
  if (correlations.size() != gram.rows()) {
    throw DomainError("correlation vector length must match Gram dimension");
  }
  if (!(pivot_tol > 0.0)) {
    throw DomainError("pivot tolerance must be positive");
  }
}

void CholeskyProjection::solve_column(int j, Eigen::VectorXd& w, double& pivot,
                                      double& residual) const {
  if (j < 0 || j >= gram_->rows()) {
    throw DomainError("column " + std::to_string(j) +
                      " outside Gram matrix of dimension " +
                      std::to_string(gram_->rows()));
  }
  const int r = rank();
  w.resize(r);
  // Forward substitution L w = C(basis, j).
  for (int i = 0; i < r; ++i) {
    double s = (*gram_)(basis_[i], j);
    for (int t = 0; t < i; ++t) s -= l_(i, t) * w(t);
    w(i) = s / l_(i, i);
  }
  // `pivot` carries the squared diagonal entry (the Schur complement of j
  // against the basis); with unit-norm columns it lies in [0, 1].
  pivot = (*gram_)(j, j) - w.squaredNorm();
  residual = (*corr_)(j) - w.dot(z_.head(r));
}

CholeskyProjection::Gain CholeskyProjection::peek(int j) const {
  Eigen::VectorXd w;
  double pivot = 0.0;
  double residual = 0.0;
  solve_column(j, w, pivot, residual);
  if (pivot <= pivot_tol_) return {0.0, false};
  return {residual * residual / pivot, true};
}

void CholeskyProjection::add(int j) {
  Eigen::VectorXd w;
  double pivot = 0.0;
  double residual = 0.0;
  solve_column(j, w, pivot, residual);
  columns_.push_back(j);
  if (pivot <= pivot_tol_) return;  // spans nothing new
  const int r = rank();
  if (l_.rows() <= r) {
    const Eigen::Index cap = std::max<Eigen::Index>(8, 2 * l_.rows());
    l_.conservativeResize(cap, cap);
    z_.conservativeResize(cap);
  }
  l_.row(r).head(r) = w.transpose();
  l_(r, r) = std::sqrt(pivot);
  z_(r) = residual / l_(r, r);
  // Same expression as peek(), so scanned gains match committed gains bit
  // for bit.
  value_ += residual * residual / pivot;
  basis_.push_back(j);
}

Eigen::VectorXd CholeskyProjection::coefficients() const {
  const int r = rank();
  Eigen::VectorXd u = z_.head(r);
  // Back substitution L' u = z.
  for (int i = r - 1; i >= 0; --i) {
    double s = u(i);
    for (int t = i + 1; t < r; ++t) s -= l_(t, i) * u(t);
    u(i) = s / l_(i, i);
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(gram_->rows());
  for (int i = 0; i < r; ++i) beta(basis_[i]) = u(i);
  return beta;
}

double r2_value(const RegressionInstance& instance, SetView s) {
  const auto sorted = canonical_subset(GroundSet{instance.dimension()}, s);
  CholeskyProjection proj(instance.c, instance.b);
  for (int j : sorted) proj.add(j);
  return proj.value();
}

RSquaredObjective::RSquaredObjective(RegressionInstance instance)
    : RSquaredObjective(
          std::make_shared<const RegressionInstance>(std::move(instance))) {}

namespace {

int checked_dimension(const std::shared_ptr<const RegressionInstance>& p) {
  if (!p) throw DomainError("regression instance must not be null");
  return p->dimension();
}

}  // namespace

RSquaredObjective::RSquaredObjective(
    std::shared_ptr<const RegressionInstance> shared)
    : SetFunctionOracle(checked_dimension(shared)),
      instance_(std::move(shared)) {}

double RSquaredObjective::raw_value(SetView sorted) const {
  CholeskyProjection proj(instance_->c, instance_->b);
  for (int j : sorted) proj.add(j);
  return proj.value();
}

namespace {

// Marginal gains against the growing selection come from one forward
// substitution per candidate instead of a fresh factorization. A gain()
// costs one recorded oracle call; select() replays the same deterministic
// arithmetic and costs none.
class IncrementalR2Session final : public GainSession {
 public:
  explicit IncrementalR2Session(const RSquaredObjective& f)
      : f_(f), proj_(f.instance().c, f.instance().b) {}

  double gain(int element) override {
    if (set_contains(selection_, element)) {
      throw DomainError("element " + std::to_string(element) +
                        " already selected");
    }
    f_.record_evaluations(1);
    const auto g = proj_.peek(element);
    scanned_[element] = g.independent;
    return g.value;
  }

  void select(int element) override {
    const auto it = scanned_.find(element);
    if (it == scanned_.end()) {
      throw DomainError("select() without a gain() for element " +
                        std::to_string(element));
    }
    proj_.add(element);
    degenerate_ = !it->second;
    commit(element, proj_.value());
    scanned_.clear();
  }

  bool last_select_degenerate() const override { return degenerate_; }

 private:
  const RSquaredObjective& f_;
  CholeskyProjection proj_;
  std::unordered_map<int, bool> scanned_;
  bool degenerate_ = false;
};

}  // namespace

std::unique_ptr<GainSession> RSquaredObjective::make_session() const {
  return std::make_unique<IncrementalR2Session>(*this);
}

double gamma_lower_bound(const RegressionInstance& instance, SetView s, int k,
                         std::uint64_t budget) {
  const auto sorted = canonical_subset(GroundSet{instance.dimension()}, s);
  if (k < 1) throw DomainError("sparsity order k must be at least 1");
  const auto wanted =
      static_cast<std::int64_t>(k) + static_cast<std::int64_t>(sorted.size());
  const int order = static_cast<int>(
      std::min<std::int64_t>(instance.dimension(), wanted));
  const SparseEigenBounds bounds = sparse_eigenvalues(instance.c, order,
                                                      budget);
  return std::max(0.0, bounds.lambda_min);
}

double nu_lower_bound(const RegressionInstance& instance, SetView s) {
  const auto sorted = canonical_subset(GroundSet{instance.dimension()}, s);
  if (sorted.empty()) throw DomainError("support must be nonempty");
  const int m = static_cast<int>(sorted.size());
  Eigen::MatrixXd block(m, m);
  for (int a = 0; a < m; ++a) {
    for (int p = 0; p <= a; ++p) {
      block(a, p) = instance.c(sorted[a], sorted[p]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      block, Eigen::EigenvaluesOnly);
  const double lmax = solver.eigenvalues().maxCoeff();
  if (lmax <= kValueTol) {
    throw DegenerateDataError(
        "Gram block of the selected columns is numerically zero");
  }
  return std::max(0.0, solver.eigenvalues().minCoeff()) / lmax;
}

SelectionTrace omp_select(const RegressionInstance& instance, int k,
                          SetView candidates) {
  const GroundSet ground{instance.dimension()};
  std::vector<int> pool;
  if (candidates.empty()) {
    pool.resize(instance.dimension());
    std::iota(pool.begin(), pool.end(), 0);
  } else {
    pool = canonical_subset(ground, candidates);
  }
  if (k < 1 || k > static_cast<int>(pool.size())) {
    throw ConfigError("selection budget " + std::to_string(k) +
                      " must lie between 1 and the candidate count " +
                      std::to_string(pool.size()));
  }
  CholeskyProjection proj(instance.c, instance.b);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(instance.dimension());
  SelectionTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(k));
  for (int step = 0; step < k; ++step) {
    // Residual correlation X'(y - X beta) = b - C beta; beta is supported on
    // the current basis, so the product is O(d |basis|).
    Eigen::VectorXd score = instance.b;
    for (int col : proj.basis()) {
      score.noalias() -= instance.c.col(col) * beta(col);
    }
    int best = -1;
    double best_abs = -1.0;
    for (int j : pool) {
      const double a = std::abs(score(j));
      if (a > best_abs) {  // strict: ties keep the lowest index
        best_abs = a;
        best = j;
      }
    }
    const double before = proj.value();
    const int rank_before = proj.rank();
    proj.add(best);
    beta = proj.coefficients();
    pool.erase(std::find(pool.begin(), pool.end(), best));
    SelectionStep record;
    record.element = best;
    record.gain = proj.value() - before;
    record.value = proj.value();
    record.evaluations = 1;  // one refit per step
    record.degenerate = proj.rank() == rank_before;
    trace.steps.push_back(record);
  }
  return trace;
}

RegressionInstance load_regression_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  const auto header = split(trim(line), ',');
  const int columns = static_cast<int>(header.size());
  if (columns < 2) {
    throw ConfigError(path +
                      ": need at least one feature column and a final "
                      "response column");
  }
  std::vector<double> values;
  int rows = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto fields = split(body, ',');
    const std::string context = path + ":" + std::to_string(lineno);
    if (static_cast<int>(fields.size()) != columns) {
      throw ConfigError(context + ": expected " + std::to_string(columns) +
                        " fields, got " + std::to_string(fields.size()));
    }
    for (const auto& field : fields) {
      values.push_back(parse_double(field, context));
    }
    ++rows;
  }
  if (rows == 0) throw ConfigError(path + ": no data rows");
  Eigen::MatrixXd x(rows, columns - 1);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j + 1 < columns; ++j) {
      x(i, j) = values[static_cast<std::size_t>(i) * columns + j];
    }
    y(i) = values[static_cast<std::size_t>(i) * columns + columns - 1];
  }
  return RegressionInstance(std::move(x), std::move(y));
}

void write_regression_csv(const std::string& path, const Eigen::MatrixXd& x,
                          const Eigen::VectorXd& y) {
  if (y.size() != x.rows()) {
    throw DomainError("response length does not match sample count");
  }
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot open " + path + " for writing");
  for (Eigen::Index j = 0; j < x.cols(); ++j) out << "x" << j << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out << format_double(x(i, j)) << ",";
    }
    out << format_double(y(i)) << "\n";
  }
  if (!out) throw ResourceError("failed while writing " + path);
}

std::string support_to_csv(SetView s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(s[i]);
  }
  return out;
}

std::vector<int> support_from_csv(const std::string& text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& field : split(text, ',')) {
    out.push_back(parse_int(field, "support list"));
  }
  return out;
}

}  // namespace submax
