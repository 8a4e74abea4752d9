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

#include "submax/support_selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <unordered_set>
#include <utility>

#include <Eigen/Dense>

#include "submax/errors.hpp"
#include "submax/strings.hpp"

namespace submax {

namespace {

void check_point(const SmoothObjective& g, const Eigen::VectorXd& x) {
  if (x.size() != g.dimension()) {
    throw DomainError("point has length " + std::to_string(x.size()) +
                      ", objective dimension is " +
                      std::to_string(g.dimension()));
  }
}

double stable_sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

// log(1 + e^{-u}) without overflow for large |u|.
double log1p_exp_neg(double u) {
  if (u > 0.0) return std::log1p(std::exp(-u));
  return -u + std::log1p(std::exp(u));
}

void check_symmetric(const Eigen::MatrixXd& a, const char* what) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw DomainError(std::string(what) + " must be symmetric");
  }
}

}  // namespace

SmoothObjective::SmoothObjective(int dimension) : dimension_(dimension) {
  if (dimension < 1) {
    throw DomainError("objective must have at least one variable");
  }
}

double SmoothObjective::value_on_support(const Eigen::VectorXd& x,
                                         SetView) const {
  return value(x);
}

Eigen::VectorXd SmoothObjective::gradient_on_support(const Eigen::VectorXd& x,
                                                     SetView support) const {
  const Eigen::VectorXd full = gradient(x);
  Eigen::VectorXd out(static_cast<Eigen::Index>(support.size()));
  for (std::size_t p = 0; p < support.size(); ++p) out(p) = full(support[p]);
  return out;
}

Eigen::MatrixXd SmoothObjective::hessian_on_support(const Eigen::VectorXd& x,
                                                    SetView support) const {
  check_point(*this, x);
  const int m = static_cast<int>(support.size());
  Eigen::MatrixXd out(m, m);
  Eigen::VectorXd xp = x;
  Eigen::VectorXd xm = x;
  for (int col = 0; col < m; ++col) {
    const int j = support[col];
    const double h = 1e-5 * (1.0 + std::abs(x(j)));
    xp(j) = x(j) + h;
    xm(j) = x(j) - h;
    const Eigen::VectorXd gp = gradient(xp);
    const Eigen::VectorXd gm = gradient(xm);
    for (int row = 0; row < m; ++row) {
      out(row, col) = (gp(support[row]) - gm(support[row])) / (2.0 * h);
    }
    xp(j) = x(j);
    xm(j) = x(j);
  }
  return 0.5 * (out + out.transpose());
}

bool SmoothObjective::restricted_maximizer(SetView, Eigen::VectorXd&) const {
  return false;
}

QuadraticObjective::QuadraticObjective(Eigen::MatrixXd a,
                                       Eigen::VectorXd linear)
    : SmoothObjective(static_cast<int>(linear.size())),
      a_(std::move(a)),
      b_(std::move(linear)) {
  if (a_.rows() != a_.cols() || a_.rows() != b_.size()) {
    throw DomainError("quadratic term must be square and match the linear "
                      "term length");
  }
  check_symmetric(a_, "quadratic term");
}

double QuadraticObjective::value(const Eigen::VectorXd& x) const {
  check_point(*this, x);
  return -0.5 * x.dot(a_ * x) + b_.dot(x);
}

Eigen::VectorXd QuadraticObjective::gradient(const Eigen::VectorXd& x) const {
  check_point(*this, x);
  return b_ - a_ * x;
}

Eigen::MatrixXd QuadraticObjective::hessian_on_support(const Eigen::VectorXd&,
                                                       SetView support) const {
  const int m = static_cast<int>(support.size());
  Eigen::MatrixXd out(m, m);
  for (int row = 0; row < m; ++row) {
    for (int col = 0; col < m; ++col) {
      out(row, col) = -a_(support[row], support[col]);
    }
  }
  return out;
}

bool QuadraticObjective::restricted_maximizer(SetView support,
                                              Eigen::VectorXd& out) const {
  const int m = static_cast<int>(support.size());
  out = Eigen::VectorXd::Zero(dimension());
  if (m == 0) return true;
  Eigen::MatrixXd ass(m, m);
  Eigen::VectorXd bs(m);
  for (int row = 0; row < m; ++row) {
    bs(row) = b_(support[row]);
    for (int col = 0; col < m; ++col) {
      ass(row, col) = a_(support[row], support[col]);
    }
  }
  Eigen::VectorXd t;
  Eigen::LLT<Eigen::MatrixXd> llt(ass);
  if (llt.info() == Eigen::Success) {
    t = llt.solve(bs);
    t += llt.solve(bs - ass * t);  // one refinement pass
  } else {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(ass);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
    t = ldlt.solve(bs);
    t += ldlt.solve(bs - ass * t);
  }
  for (int row = 0; row < m; ++row) out(support[row]) = t(row);
  return true;
}

LogisticObjective::LogisticObjective(Eigen::MatrixXd features,
                                     Eigen::VectorXd labels)
    : SmoothObjective(static_cast<int>(features.cols())),
      z_(std::move(features)),
      labels_(std::move(labels)) {
  if (z_.rows() < 1) throw DomainError("need at least one sample");
  if (labels_.size() != z_.rows()) {
    throw DomainError("label count does not match sample count");
  }
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    if (labels_(i) != 1.0 && labels_(i) != -1.0) {
      throw DomainError("labels must be +1 or -1; sample " +
                        std::to_string(i) + " has " +
                        format_double(labels_(i), 6));
    }
  }
}

double LogisticObjective::value(const Eigen::VectorXd& x) const {
  check_point(*this, x);
  const Eigen::VectorXd t = z_ * x;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    acc -= log1p_exp_neg(labels_(i) * t(i));
  }
  return acc;
}

Eigen::VectorXd LogisticObjective::gradient(const Eigen::VectorXd& x) const {
  check_point(*this, x);
  const Eigen::VectorXd t = z_ * x;
  Eigen::VectorXd w(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    w(i) = labels_(i) * stable_sigmoid(-labels_(i) * t(i));
  }
  return z_.transpose() * w;
}

Eigen::VectorXd LogisticObjective::predictor_on_support(
    const Eigen::VectorXd& x, SetView support) const {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(z_.rows());
  for (int j : support) {
    if (x(j) != 0.0) t.noalias() += z_.col(j) * x(j);
  }
  return t;
}

double LogisticObjective::value_on_support(const Eigen::VectorXd& x,
                                           SetView support) const {
  check_point(*this, x);
  const Eigen::VectorXd t = predictor_on_support(x, support);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    acc -= log1p_exp_neg(labels_(i) * t(i));
  }
  return acc;
}

Eigen::VectorXd LogisticObjective::gradient_on_support(const Eigen::VectorXd& x,
                                                       SetView support) const {
  check_point(*this, x);
  const Eigen::VectorXd t = predictor_on_support(x, support);
  Eigen::VectorXd w(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    w(i) = labels_(i) * stable_sigmoid(-labels_(i) * t(i));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(support.size()));
  for (std::size_t p = 0; p < support.size(); ++p) {
    out(p) = z_.col(support[p]).dot(w);
  }
  return out;
}

Eigen::MatrixXd LogisticObjective::hessian_on_support(const Eigen::VectorXd& x,
                                                      SetView support) const {
  check_point(*this, x);
  const int m = static_cast<int>(support.size());
  const Eigen::VectorXd t = predictor_on_support(x, support);
  Eigen::MatrixXd zs(z_.rows(), m);
  for (int col = 0; col < m; ++col) zs.col(col) = z_.col(support[col]);
  Eigen::VectorXd d(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double s = stable_sigmoid(t(i));
    d(i) = s * (1.0 - s);
  }
  return -(zs.transpose() * d.asDiagonal() * zs);
}

InnerSolveReport maximize_on_support(const SmoothObjective& g, SetView support,
                                     const InnerSolveOptions& options,
                                     const Eigen::VectorXd* warm_start) {
  if (!(options.tolerance > 0.0)) {
    throw DomainError("inner tolerance must be positive");
  }
  if (options.max_iterations < 1) {
    throw DomainError("inner iteration cap must be at least 1");
  }
  const auto sorted = canonical_subset(GroundSet{g.dimension()}, support);
  InnerSolveReport report;
  report.maximizer = Eigen::VectorXd::Zero(g.dimension());
  if (sorted.empty()) {
    report.objective_value = g.value(report.maximizer);
    return report;
  }
  const int m = static_cast<int>(sorted.size());

  Eigen::VectorXd x;
  Eigen::VectorXd closed;
  if (g.restricted_maximizer(sorted, closed)) {
    const double norm = g.gradient_on_support(closed, sorted).norm();
    if (norm <= options.tolerance) {
      report.maximizer = std::move(closed);
      report.objective_value = g.value_on_support(report.maximizer, sorted);
      report.gradient_norm = norm;
      return report;
    }
    x = std::move(closed);  // refine by Newton below
  } else if (warm_start != nullptr) {
    check_point(g, *warm_start);
    // Keep only the coordinates inside the support.
    x = Eigen::VectorXd::Zero(g.dimension());
    for (int j : sorted) x(j) = (*warm_start)(j);
  } else {
    x = Eigen::VectorXd::Zero(g.dimension());
  }

  // Damped Newton with Armijo backtracking; falls back to a gradient step
  // when the Hessian block is not usable.
  double grad_norm = 0.0;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd gs = g.gradient_on_support(x, sorted);
    grad_norm = gs.norm();
    if (grad_norm <= options.tolerance) {
      report.maximizer = std::move(x);
      report.objective_value = g.value_on_support(report.maximizer, sorted);
      report.iterations = iter;
      report.gradient_norm = grad_norm;
      return report;
    }
    if (iter == options.max_iterations) break;
    const Eigen::MatrixXd neg_hess = -g.hessian_on_support(x, sorted);
    Eigen::VectorXd p;
    bool usable = false;
    Eigen::LLT<Eigen::MatrixXd> llt(neg_hess);
    if (llt.info() == Eigen::Success) {
      p = llt.solve(gs);
      usable = p.dot(gs) > 0.0;
    }
    if (!usable) p = gs;
    Eigen::VectorXd trial = x;
    // Full step first, judged on gradient contraction: near the optimum the
    // value improvement drops below double precision and a value-based test
    // turns into noise, while the restricted gradient norm keeps shrinking.
    for (int q = 0; q < m; ++q) trial(sorted[q]) = x(sorted[q]) + p(q);
    if (g.gradient_on_support(trial, sorted).norm() <= 0.9 * grad_norm) {
      x.swap(trial);
      continue;
    }
    const double base = g.value_on_support(x, sorted);
    const double slope = p.dot(gs);
    double step = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (int q = 0; q < m; ++q) trial(sorted[q]) = x(sorted[q]) + step * p(q);
      if (g.value_on_support(trial, sorted) >= base + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      throw ConvergenceError(
          "line search stalled at restricted gradient norm " +
          format_double(grad_norm, 6) +
          "; the objective may not be strongly concave on this support");
    }
    x.swap(trial);
  }
  throw ConvergenceError(
      "inner solver did not reach gradient tolerance " +
      format_double(options.tolerance, 6) + " within " +
      std::to_string(options.max_iterations) +
      " iterations (last gradient norm " + format_double(grad_norm, 6) +
      "); relax the tolerance or raise the iteration cap");
}

double support_value(const SmoothObjective& g, SetView support,
                     const InnerSolveOptions& options) {
  const InnerSolveReport report = maximize_on_support(g, support, options);
  const double at_zero = g.value(Eigen::VectorXd::Zero(g.dimension()));
  return report.objective_value - at_zero;
}

namespace {

const SmoothObjective& checked_smooth(
    const std::shared_ptr<const SmoothObjective>& g) {
  if (!g) throw DomainError("smooth objective must not be null");
  return *g;
}

// Warm-started incremental evaluation: each candidate solve starts from the
// maximizer of the current selection, which select() recomputes with the
// exact same arithmetic as the scan, so committing costs no oracle call.
class WarmStartSession final : public GainSession {
 public:
  explicit WarmStartSession(const SupportObjective& f)
      : f_(f),
        x_(Eigen::VectorXd::Zero(f.dimension())),
        at_zero_(f.smooth().value(x_)) {}

  double gain(int element) override {
    if (set_contains(selection_, element)) {
      throw DomainError("element " + std::to_string(element) +
                        " already selected");
    }
    f_.record_evaluations(1);
    return solve_with(element).objective_value - at_zero_ - value_;
  }

  void select(int element) override {
    if (scanned_.find(element) == scanned_.end()) {
      throw DomainError("select() without a gain() for element " +
                        std::to_string(element));
    }
    InnerSolveReport report = solve_with(element);
    x_ = std::move(report.maximizer);
    commit(element, report.objective_value - at_zero_);
    scanned_.clear();
  }

 private:
  InnerSolveReport solve_with(int element) {
    const auto support = with_element(selection_, element);
    scanned_.insert(element);
    return maximize_on_support(f_.smooth(), support, f_.options(), &x_);
  }

  const SupportObjective& f_;
  Eigen::VectorXd x_;
  double at_zero_;
  std::unordered_set<int> scanned_;
};

}  // namespace

SupportObjective::SupportObjective(std::shared_ptr<const SmoothObjective> g,
                                   InnerSolveOptions options)
    : SetFunctionOracle(checked_smooth(g).dimension()),
      g_(std::move(g)),
      options_(options) {
  if (!(options_.tolerance > 0.0)) {
    throw DomainError("inner tolerance must be positive");
  }
  if (options_.max_iterations < 1) {
    throw DomainError("inner iteration cap must be at least 1");
  }
}

double SupportObjective::raw_value(SetView sorted) const {
  return maximize_on_support(*g_, sorted, options_).objective_value;
}

std::unique_ptr<GainSession> SupportObjective::make_session() const {
  return std::make_unique<WarmStartSession>(*this);
}

RestrictedConcavityBounds rsc_rsm_quadratic(const Eigen::MatrixXd& a,
                                            int order, std::uint64_t budget) {
  if (a.rows() != a.cols()) throw DomainError("matrix must be square");
  check_symmetric(a, "matrix");
  if (order < 1) throw DomainError("sparsity order must be at least 1");
  const int clamped = std::min<int>(order, static_cast<int>(a.rows()));
  const SparseEigenBounds bounds = sparse_eigenvalues(a, clamped, budget);
  RestrictedConcavityBounds out;
  out.m = bounds.lambda_min;
  out.l = bounds.lambda_max;
  out.order = clamped;
  return out;
}

double gamma_lower_bound(double m, double l) {
  if (!(m > 0.0)) {
    throw DomainError("strong-concavity constant m must be positive");
  }
  if (!(l >= m)) {
    throw DomainError("smoothness constant L must be at least m");
  }
  return m / l;
}

double nu_lower_bound(double m, double l) { return gamma_lower_bound(m, l); }

std::vector<BoundCertificate> combined_certificates(
    double m, double l, std::optional<double> delta, int sparsity_order) {
  if (sparsity_order < 1) {
    throw DomainError("sparsity order must be at least 1");
  }
  const double ratio = gamma_lower_bound(m, l);
  std::vector<BoundCertificate> out;
  out.push_back(make_certificate(CertificateKind::kGreedy, ratio));
  if (delta.has_value()) {
    out.push_back(make_certificate(CertificateKind::kStochastic, ratio,
                                   std::nullopt, delta));
  }
  out.push_back(make_certificate(CertificateKind::kDistributed, ratio, ratio));
  for (auto& cert : out) cert.sparsity_order = sparsity_order;
  return out;
}

LogisticObjective load_logistic_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  const auto header = split(trim(line), ',');
  const int columns = static_cast<int>(header.size());
  if (columns < 2) {
    throw ConfigError(path +
                      ": need at least one feature column and a final label "
                      "column");
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
    for (int j = 0; j < columns; ++j) {
      const double v = parse_double(fields[j], context);
      if (j == columns - 1 && v != 1.0 && v != -1.0) {
        throw ConfigError(context + ": label must be +1 or -1, got '" +
                          trim(fields[j]) + "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw ConfigError(path + ": no data rows");
  Eigen::MatrixXd z(rows, columns - 1);
  Eigen::VectorXd labels(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j + 1 < columns; ++j) {
      z(i, j) = values[static_cast<std::size_t>(i) * columns + j];
    }
    labels(i) = values[static_cast<std::size_t>(i) * columns + columns - 1];
  }
  return LogisticObjective(std::move(z), std::move(labels));
}

}  // namespace submax
