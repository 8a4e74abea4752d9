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

#include "submax/set_function.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

namespace submax {

namespace {

void canonicalize_into(const GroundSet& ground, SetView s,
                       std::vector<int>& out) {
  out.assign(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!ground.contains(out[i])) {
      throw DomainError("element " + std::to_string(out[i]) +
                        " outside ground set of size " +
                        std::to_string(ground.size));
    }
    if (i > 0 && out[i] == out[i - 1]) {
      throw DomainError("duplicate element " + std::to_string(out[i]) +
                        " in subset");
    }
  }
}

}  // namespace

std::vector<int> canonical_subset(const GroundSet& ground, SetView s) {
  std::vector<int> out;
  canonicalize_into(ground, s, out);
  return out;
}

bool set_contains(SetView sorted, int j) {
  return std::binary_search(sorted.begin(), sorted.end(), j);
}

std::vector<int> with_element(SetView sorted, int j) {
  std::vector<int> out;
  out.reserve(sorted.size() + 1);
  auto pos = std::lower_bound(sorted.begin(), sorted.end(), j);
  out.insert(out.end(), sorted.begin(), pos);
  out.push_back(j);
  out.insert(out.end(), pos, sorted.end());
  return out;
}

SetFunctionOracle::SetFunctionOracle(int dimension) : ground_{dimension} {
  if (dimension < 1) {
    throw DomainError("ground set must have at least one element");
  }
}

SetFunctionOracle::SetFunctionOracle(const SetFunctionOracle& other)
    : ground_(other.ground_) {}

double SetFunctionOracle::offset() const {
  std::call_once(offset_once_, [this] { offset_ = raw_value(SetView{}); });
  return offset_;
}

double SetFunctionOracle::evaluate(SetView s) const {
  thread_local std::vector<int> scratch;
  canonicalize_into(ground_, s, scratch);
  record_evaluations(1);
  if (scratch.empty()) return 0.0;
  return raw_value(scratch) - offset();
}

double marginal_gain(const SetFunctionOracle& f, SetView s, int j) {
  const double base = s.empty() ? 0.0 : f.evaluate(s);
  return marginal_gain(f, s, base, j);
}

double marginal_gain(const SetFunctionOracle& f, SetView s, double value_of_s,
                     int j, double* union_value) {
  std::vector<int> sorted = canonical_subset(f.ground_set(), s);
  if (set_contains(sorted, j)) {
    throw DomainError("element " + std::to_string(j) +
                      " already in the base set");
  }
  const double u = f.evaluate(with_element(sorted, j));
  if (union_value != nullptr) *union_value = u;
  return u - value_of_s;
}

std::vector<int> SelectionTrace::selected_in_order() const {
  std::vector<int> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.element);
  return out;
}

std::vector<int> SelectionTrace::selected_sorted() const {
  std::vector<int> out = selected_in_order();
  std::sort(out.begin(), out.end());
  return out;
}

double SelectionTrace::value() const {
  return steps.empty() ? 0.0 : steps.back().value;
}

std::uint64_t SelectionTrace::total_evaluations() const {
  std::uint64_t n = 0;
  for (const auto& s : steps) n += s.evaluations;
  return n;
}

void GainSession::commit(int element, double new_value) {
  auto pos = std::lower_bound(selection_.begin(), selection_.end(), element);
  selection_.insert(pos, element);
  value_ = new_value;
}

namespace {

// Generic session: one evaluate() per gain; union values scanned in the
// current step are kept so select() is free.
class PlainGainSession final : public GainSession {
 public:
  explicit PlainGainSession(const SetFunctionOracle& f) : f_(f) {}

  double gain(int element) override {
    if (set_contains(selection_, element)) {
      throw DomainError("element " + std::to_string(element) +
                        " already selected");
    }
    const double u = f_.evaluate(with_element(selection_, element));
    scanned_[element] = u;
    return u - value_;
  }

  void select(int element) override {
    auto it = scanned_.find(element);
    if (it == scanned_.end()) {
      throw DomainError("select() without a gain() for element " +
                        std::to_string(element));
    }
    commit(element, it->second);
    scanned_.clear();
  }

 private:
  const SetFunctionOracle& f_;
  std::unordered_map<int, double> scanned_;
};

}  // namespace

std::unique_ptr<GainSession> SetFunctionOracle::make_session() const {
  return std::make_unique<PlainGainSession>(*this);
}

ModularObjective::ModularObjective(Eigen::VectorXd weights)
    : SetFunctionOracle(static_cast<int>(weights.size())),
      w_(std::move(weights)) {}

double ModularObjective::raw_value(SetView sorted) const {
  double v = 0.0;
  for (int j : sorted) v += w_(j);
  return v;
}

CardinalityObjective::CardinalityObjective(int dimension)
    : SetFunctionOracle(dimension) {}

double CardinalityObjective::raw_value(SetView sorted) const {
  return static_cast<double>(sorted.size());
}

CoverageObjective::CoverageObjective(int dimension,
                                     std::vector<std::uint64_t> covers)
    : SetFunctionOracle(dimension), covers_(std::move(covers)) {
  if (static_cast<int>(covers_.size()) != dimension) {
    throw DomainError("coverage oracle needs one cover mask per element");
  }
}

double CoverageObjective::raw_value(SetView sorted) const {
  std::uint64_t acc = 0;
  for (int j : sorted) acc |= covers_[j];
  return static_cast<double>(std::popcount(acc));
}

}  // namespace submax
