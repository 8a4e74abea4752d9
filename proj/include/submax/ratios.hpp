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

#ifndef SUBMAX_RATIOS_HPP_
#define SUBMAX_RATIOS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submax/set_function.hpp"

namespace submax {

// Exact enumeration caps. The pairwise submodularity-ratio scan touches all
// 2^d subsets, so it is gated on the ground set size; set-family scans are
// gated on the number of enumerated sets.
inline constexpr int kMaxBruteForceDimension = 14;
inline constexpr std::uint64_t kEnumerationBudget = 1'000'000;

enum class RatioScope {
  kPair,        // one (L, S) pair
  kSetVsK,      // min over L ⊆ U, S disjoint, 1 <= |S| <= k
  kSet,         // min over two-block partitions of one set
  kKUniform,    // min over all sets of size k
};

struct RatioReport {
  double value = 0.0;
  RatioScope scope = RatioScope::kPair;
  // Attaining witness: (L, S) for submodularity scans, (A, B) for
  // subadditivity partitions. For kKUniform, witness_set is the size-k set
  // whose partition attains the minimum.
  std::vector<int> witness_first;
  std::vector<int> witness_second;
  std::vector<int> witness_set;

  std::string to_key_value_lines() const;
};

// f values for all 2^d subsets, indexed by bit mask (bit j = element j).
// Throws ResourceError if d exceeds max_dimension.
std::vector<double> all_subset_values(
    const SetFunctionOracle& f, int max_dimension = kMaxBruteForceDimension);

// Submodularity ratio of one disjoint pair:
//   Σ_{j∈S} [f(L ∪ {j}) - f(L)]  /  [f(L ∪ S) - f(L)].
// A zero denominator yields 1 when the numerator is also zero and +inf
// otherwise; +inf never attains a minimum. Throws DomainError if L and S
// overlap or S is empty.
double submodularity_ratio_pair(const SetFunctionOracle& f, SetView l,
                                SetView s);

// Exact min of the pair ratio over L ⊆ U and S ⊆ [d] \ L with 1 <= |S| <= k.
// The enumeration order is fixed, so the reported witness is deterministic.
RatioReport submodularity_ratio_uk(
    const SetFunctionOracle& f, SetView u, int k,
    int max_dimension = kMaxBruteForceDimension);

// Exact min over all 2^|S| two-block partitions (A, S \ A) of
//   [f(A) + f(S \ A)] / f(S).
// The trivial partition (∅, S) contributes exactly 1. Throws
// DegenerateDataError when f(S) is not above the value tolerance.
RatioReport subadditivity_ratio_set(const SetFunctionOracle& f, SetView s);

// Exact min of subadditivity_ratio_set over all sets of size k. Sets whose
// value is below tolerance carry no defined ratio and are skipped; if every
// set is degenerate this throws DegenerateDataError.
RatioReport subadditivity_ratio_k(const SetFunctionOracle& f, int k,
                                  std::uint64_t budget = kEnumerationBudget);

struct BruteForceOpt {
  std::vector<int> set;  // lexicographically least among value ties
  double value = 0.0;
};

// Exhaustive max of f over all subsets of size at most k.
BruteForceOpt brute_force_opt(const SetFunctionOracle& f, int k,
                              std::uint64_t budget = kEnumerationBudget);

enum class CertificateKind { kGreedy, kStochastic, kDistributed };

const char* certificate_kind_name(CertificateKind kind);

// A machine-checkable approximation-factor certificate. The factor is the
// closed form of the matching guarantee, clamped to [0, 1]:
//   greedy       1 - e^-gamma
//   stochastic   1 - e^-gamma - delta
//   distributed  (nu / 2) (1 - e^-gamma)
struct BoundCertificate {
  CertificateKind kind = CertificateKind::kGreedy;
  double gamma = 0.0;
  std::optional<double> nu;
  std::optional<double> delta;
  double factor = 0.0;
  std::optional<double> opt_value;
  // Sparsity order at which the certified constants were computed, when the
  // caller supplied one.
  std::optional<int> sparsity_order;

  std::string to_key_value_lines() const;
};

// Validates the inputs required by `kind` (nu for distributed, delta in
// (0, 1) for stochastic, gamma > 0 always) and fills in the factor.
BoundCertificate make_certificate(CertificateKind kind, double gamma,
                                  std::optional<double> nu = std::nullopt,
                                  std::optional<double> delta = std::nullopt,
                                  std::optional<double> opt_value =
                                      std::nullopt);

}  // namespace submax

#endif  // SUBMAX_RATIOS_HPP_
