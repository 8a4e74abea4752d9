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

#ifndef SUBMAX_SET_FUNCTION_HPP_
#define SUBMAX_SET_FUNCTION_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "submax/errors.hpp"

namespace submax {

using SetView = std::span<const int>;

// Slack allowed when checking f(S) <= f(T) for S ⊆ T, relative to
// max(1, |f(T)|).
inline constexpr double kMonotoneTol = 1e-9;
// Absolute tolerance for treating a value difference as zero (ratio
// denominators, trace consistency checks).
inline constexpr double kValueTol = 1e-9;

// The ground set {0, ..., size-1}.
struct GroundSet {
  int size = 0;
  bool contains(int j) const { return j >= 0 && j < size; }
};

// Sorted copy of s. Throws DomainError on out-of-range or duplicate indices.
std::vector<int> canonical_subset(const GroundSet& ground, SetView s);

// Helpers on sorted index vectors.
bool set_contains(SetView sorted, int j);
std::vector<int> with_element(SetView sorted, int j);

class GainSession;

// A normalized monotone set function f with f(∅) = 0.
//
// Implementations provide raw_value() on a sorted duplicate-free subset;
// normalization subtracts the raw value of the empty set, computed once on
// first use, so f(∅) = 0 holds exactly. evaluate() validates its argument,
// counts one oracle call, and is safe to call concurrently; the call counter
// is a relaxed atomic, so totals are exact under any schedule.
class SetFunctionOracle {
 public:
  virtual ~SetFunctionOracle() = default;

  int dimension() const { return ground_.size; }
  const GroundSet& ground_set() const { return ground_; }

  double evaluate(SetView s) const;

  std::uint64_t evaluations() const {
    return evals_.load(std::memory_order_relaxed);
  }
  void reset_evaluations() { evals_.store(0, std::memory_order_relaxed); }
  // Gain sessions with specialized evaluation paths report their oracle
  // calls through this; one recorded unit corresponds to one set-function
  // evaluation.
  void record_evaluations(std::uint64_t n) const {
    evals_.fetch_add(n, std::memory_order_relaxed);
  }

  // A fresh incremental evaluator rooted at the empty set.
  virtual std::unique_ptr<GainSession> make_session() const;

  // Unnormalized value. `sorted` is validated, ascending, duplicate free.
  virtual double raw_value(SetView sorted) const = 0;

 protected:
  explicit SetFunctionOracle(int dimension);
  // Copies share the underlying function but start a fresh call counter.
  SetFunctionOracle(const SetFunctionOracle& other);
  SetFunctionOracle& operator=(const SetFunctionOracle&) = delete;

 private:
  double offset() const;

  GroundSet ground_;
  mutable std::atomic<std::uint64_t> evals_{0};
  mutable std::once_flag offset_once_;
  mutable double offset_ = 0.0;
};

// f(S ∪ {j}) - f(S) with both sides evaluated: two oracle calls, or one when
// S is empty (f(∅) = 0 by normalization). Throws DomainError if j ∈ S.
double marginal_gain(const SetFunctionOracle& f, SetView s, int j);

// Same gain with the base value f(S) supplied by the caller: one oracle
// call. The union value is written to `union_value` when non-null, so the
// caller can keep its own base cache.
double marginal_gain(const SetFunctionOracle& f, SetView s, double value_of_s,
                     int j, double* union_value = nullptr);

struct SelectionStep {
  int element = -1;
  double gain = 0.0;
  // f of the selection after this step.
  double value = 0.0;
  // Oracle calls spent on this step.
  std::uint64_t evaluations = 0;
  // The chosen column was linearly dependent on the current selection.
  bool degenerate = false;
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;

  std::vector<int> selected_in_order() const;
  std::vector<int> selected_sorted() const;
  double value() const;  // 0.0 when no steps were taken
  std::uint64_t total_evaluations() const;
};

// Incremental marginal-gain evaluation against a growing selection.
//
// gain(j) costs exactly one oracle evaluation. select(j) commits an element
// scanned in the current step and costs none: either the scanned value is
// reused or the same deterministic computation is replayed without touching
// the counter. One session is owned by one algorithm run; sessions are not
// thread safe, concurrency comes from running independent sessions.
class GainSession {
 public:
  virtual ~GainSession() = default;

  virtual double gain(int element) = 0;
  virtual void select(int element) = 0;

  double value() const { return value_; }
  const std::vector<int>& selection() const { return selection_; }
  virtual bool last_select_degenerate() const { return false; }

 protected:
  void commit(int element, double new_value);

  double value_ = 0.0;
  std::vector<int> selection_;  // ascending
};

// f(S) = Σ_{j∈S} w_j.
class ModularObjective final : public SetFunctionOracle {
 public:
  explicit ModularObjective(Eigen::VectorXd weights);
  double raw_value(SetView sorted) const override;
  const Eigen::VectorXd& weights() const { return w_; }

 private:
  Eigen::VectorXd w_;
};

// f(S) = |S|.
class CardinalityObjective final : public SetFunctionOracle {
 public:
  explicit CardinalityObjective(int dimension);
  double raw_value(SetView sorted) const override;
};

// f(S) = |∪_{j∈S} cover_j| over a universe of at most 64 items; cover sets
// are bit masks.
class CoverageObjective final : public SetFunctionOracle {
 public:
  CoverageObjective(int dimension, std::vector<std::uint64_t> covers);
  double raw_value(SetView sorted) const override;
  const std::vector<std::uint64_t>& covers() const { return covers_; }

 private:
  std::vector<std::uint64_t> covers_;
};

}  // namespace submax

#endif  // SUBMAX_SET_FUNCTION_HPP_
