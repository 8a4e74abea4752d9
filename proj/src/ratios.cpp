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

#include "submax/ratios.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "submax/strings.hpp"

namespace submax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt12(double v) { return format_double(v, 12); }

std::string join_indices(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

std::vector<int> mask_to_set(std::uint32_t mask) {
  std::vector<int> out;
  for (int j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1u) out.push_back(j);
  }
  return out;
}

std::uint32_t set_to_mask(SetView s) {
  std::uint32_t mask = 0;
  for (int j : s) mask |= (1u << j);
  return mask;
}

// Zero-denominator conventions: 0/0 is 1 (adding S did nothing and the
// singletons did nothing either), a positive numerator over a zero
// denominator is +inf and never attains a minimum.
double ratio_of(double num, double den) {
  if (den > kValueTol) return num / den;
  if (num > kValueTol) return kInf;
  return 1.0;
}

// Number of k-subsets, saturated at cap+1 to keep the comparison safe.
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

// Visits all size-k subsets of {0,...,d-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int d, int k, Fn&& visit) {
  if (k == 0) {
    std::vector<int> empty;
    visit(empty);
    return;
  }
  if (k > d) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    visit(c);
    int i = k - 1;
    while (i >= 0 && c[i] == d - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<double> all_subset_values(const SetFunctionOracle& f,
                                      int max_dimension) {
  const int d = f.dimension();
  if (d > max_dimension) {
    throw ResourceError("ground set size " + std::to_string(d) +
                        " exceeds d_max_bruteforce = " +
                        std::to_string(max_dimension));
  }
  std::vector<double> table(std::size_t{1} << d);
  std::vector<int> set;
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    set = mask_to_set(mask);
    table[mask] = f.evaluate(set);
  }
  return table;
}

double submodularity_ratio_pair(const SetFunctionOracle& f, SetView l,
                                SetView s) {
  const auto ls = canonical_subset(f.ground_set(), l);
  const auto ss = canonical_subset(f.ground_set(), s);
  if (ss.empty()) throw DomainError("S must be nonempty");
  for (int j : ss) {
    if (set_contains(ls, j)) {
      throw DomainError("L and S overlap at element " + std::to_string(j));
    }
  }
  const double fl = ls.empty() ? 0.0 : f.evaluate(ls);
  double num = 0.0;
  for (int j : ss) num += f.evaluate(with_element(ls, j)) - fl;
  std::vector<int> both(ls);
  both.insert(both.end(), ss.begin(), ss.end());
  std::sort(both.begin(), both.end());
  const double den = f.evaluate(both) - fl;
  return ratio_of(num, den);
}

RatioReport submodularity_ratio_uk(const SetFunctionOracle& f, SetView u,
                                   int k, int max_dimension) {
  const auto us = canonical_subset(f.ground_set(), u);
  if (k < 1) throw DomainError("k must be at least 1");
  const int d = f.dimension();
  const auto table = all_subset_values(f, max_dimension);
  const std::uint32_t full = (d == 32) ? ~0u : ((1u << d) - 1u);
  const std::uint32_t u_mask = set_to_mask(us);

  RatioReport report;
  report.scope = RatioScope::kSetVsK;
  report.value = kInf;
  std::uint32_t best_l = 0, best_s = 0;
  bool found = false;

  // L over submasks of U, S over nonempty submasks of the complement with
  // |S| <= k, both in increasing mask order; the first strict improvement
  // wins, so the witness is deterministic.
  std::uint32_t lm = 0;
  for (;;) {
    const double fl = table[lm];
    const std::uint32_t comp = full & ~lm;
    std::uint32_t sm = 0;
    for (;;) {
      sm = (sm - comp) & comp;  // next submask in increasing order
      if (sm == 0) break;
      if (std::popcount(sm) <= k) {
        double num = 0.0;
        for (std::uint32_t rest = sm; rest != 0; rest &= rest - 1) {
          const std::uint32_t bit = rest & (~rest + 1u);
          num += table[lm | bit] - fl;
        }
        const double value = ratio_of(num, table[lm | sm] - fl);
        if (value < report.value) {
          report.value = value;
          best_l = lm;
          best_s = sm;
          found = true;
        }
      }
    }
    if (lm == u_mask) break;
    lm = (lm - u_mask) & u_mask;
  }
  if (found) {
    report.witness_first = mask_to_set(best_l);
    report.witness_second = mask_to_set(best_s);
  }
  return report;
}

RatioReport subadditivity_ratio_set(const SetFunctionOracle& f, SetView s) {
  const auto ss = canonical_subset(f.ground_set(), s);
  if (ss.empty()) throw DomainError("S must be nonempty");
  const int m = static_cast<int>(ss.size());

  // Values on the 2^|S| subsets of S, indexed by local mask.
  std::vector<double> table(std::size_t{1} << m);
  std::vector<int> subset;
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    subset.clear();
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) subset.push_back(ss[i]);
    }
    table[mask] = f.evaluate(subset);
  }

  const std::uint32_t full = (1u << m) - 1u;
  const double fs = table[full];
  if (!(fs > kValueTol)) {
    throw DegenerateDataError(
        "f(S) = " + fmt12(fs) +
        " is not above tolerance; the subadditivity ratio is undefined");
  }

  RatioReport report;
  report.scope = RatioScope::kSet;
  report.value = kInf;
  std::uint32_t best_a = 0;
  for (std::uint32_t a = 0; a <= full; ++a) {
    const double value = (table[a] + table[full & ~a]) / fs;
    if (value < report.value) {
      report.value = value;
      best_a = a;
    }
  }
  std::vector<int> wa, wb;
  for (int i = 0; i < m; ++i) {
    ((best_a & (1u << i)) ? wa : wb).push_back(ss[i]);
  }
  report.witness_first = std::move(wa);
  report.witness_second = std::move(wb);
  return report;
}

RatioReport subadditivity_ratio_k(const SetFunctionOracle& f, int k,
                                  std::uint64_t budget) {
  const int d = f.dimension();
  if (k < 1 || k > d) {
    throw DomainError("k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(d) + "]");
  }
  if (binomial_capped(d, k, budget) > budget) {
    throw ResourceError("C(" + std::to_string(d) + ", " + std::to_string(k) +
                        ") exceeds the enumeration budget of " +
                        std::to_string(budget) + " sets");
  }
  RatioReport report;
  report.scope = RatioScope::kKUniform;
  report.value = kInf;
  bool found = false;
  for_each_combination(d, k, [&](const std::vector<int>& set) {
    RatioReport per_set;
    try {
      per_set = subadditivity_ratio_set(f, set);
    } catch (const DegenerateDataError&) {
      return;  // no defined ratio on this set
    }
    if (per_set.value < report.value) {
      report.value = per_set.value;
      report.witness_set = set;
      report.witness_first = std::move(per_set.witness_first);
      report.witness_second = std::move(per_set.witness_second);
      found = true;
    }
  });
  if (!found) {
    throw DegenerateDataError(
        "every size-" + std::to_string(k) +
        " set has value below tolerance; no subadditivity ratio is defined");
  }
  return report;
}

BruteForceOpt brute_force_opt(const SetFunctionOracle& f, int k,
                              std::uint64_t budget) {
  const int d = f.dimension();
  if (k < 0 || k > d) {
    throw DomainError("k = " + std::to_string(k) + " outside [0, " +
                      std::to_string(d) + "]");
  }
  std::uint64_t total = 0;
  for (int size = 0; size <= k; ++size) {
    total += binomial_capped(d, size, budget);
    if (total > budget) {
      throw ResourceError("enumerating all subsets of size <= " +
                          std::to_string(k) + " of a ground set of size " +
                          std::to_string(d) +
                          " exceeds the enumeration budget of " +
                          std::to_string(budget) + " sets");
    }
  }
  BruteForceOpt best;  // the empty set, value 0
  for (int size = 1; size <= k; ++size) {
    for_each_combination(d, size, [&](const std::vector<int>& set) {
      const double value = f.evaluate(set);
      if (value > best.value ||
          (value == best.value &&
           std::lexicographical_compare(set.begin(), set.end(),
                                        best.set.begin(), best.set.end()))) {
        best.value = value;
        best.set = set;
      }
    });
  }
  return best;
}

const char* certificate_kind_name(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kGreedy:
      return "greedy";
    case CertificateKind::kStochastic:
      return "stochastic";
    case CertificateKind::kDistributed:
      return "distributed";
  }
  return "unknown";
}

BoundCertificate make_certificate(CertificateKind kind, double gamma,
                                  std::optional<double> nu,
                                  std::optional<double> delta,
                                  std::optional<double> opt_value) {
  if (!(gamma > 0.0)) {
    throw DomainError("gamma = " + fmt12(gamma) +
                      " must be positive");
  }
  BoundCertificate cert;
  cert.kind = kind;
  cert.gamma = gamma;
  cert.opt_value = opt_value;
  double factor = 1.0 - std::exp(-gamma);
  switch (kind) {
    case CertificateKind::kGreedy:
      break;
    case CertificateKind::kStochastic:
      if (!delta.has_value()) {
        throw DomainError("stochastic certificate needs delta");
      }
      if (!(*delta > 0.0 && *delta < 1.0)) {
        throw DomainError("delta = " + fmt12(*delta) +
                          " outside (0, 1)");
      }
      cert.delta = delta;
      factor -= *delta;
      break;
    case CertificateKind::kDistributed:
      if (!nu.has_value()) {
        throw DomainError("distributed certificate needs nu");
      }
      if (!(*nu > 0.0)) {
        throw DomainError("nu = " + fmt12(*nu) + " must be positive");
      }
      cert.nu = nu;
      factor *= *nu / 2.0;
      break;
  }
  cert.factor = std::clamp(factor, 0.0, 1.0);
  return cert;
}

std::string RatioReport::to_key_value_lines() const {
  std::string out;
  const char* scope_name = "pair";
  switch (scope) {
    case RatioScope::kPair:
      scope_name = "pair";
      break;
    case RatioScope::kSetVsK:
      scope_name = "set_vs_k";
      break;
    case RatioScope::kSet:
      scope_name = "set";
      break;
    case RatioScope::kKUniform:
      scope_name = "k_uniform";
      break;
  }
  out += "ratio_scope = " + std::string(scope_name) + "\n";
  out += "ratio_value = " + fmt12(value) + "\n";
  out += "witness_first = " + join_indices(witness_first) + "\n";
  out += "witness_second = " + join_indices(witness_second) + "\n";
  if (!witness_set.empty()) {
    out += "witness_set = " + join_indices(witness_set) + "\n";
  }
  return out;
}

std::string BoundCertificate::to_key_value_lines() const {
  std::string out;
  out += "certificate = " + std::string(certificate_kind_name(kind)) + "\n";
  out += "gamma = " + fmt12(gamma) + "\n";
  if (nu.has_value()) out += "nu = " + fmt12(*nu) + "\n";
  if (delta.has_value()) out += "delta = " + fmt12(*delta) + "\n";
  if (sparsity_order.has_value()) {
    out += "sparsity_order = " + std::to_string(*sparsity_order) + "\n";
  }
  out += "factor = " + fmt12(factor) + "\n";
  if (opt_value.has_value()) {
    out += "opt_value = " + fmt12(*opt_value) + "\n";
  }
  return out;
}

}  // namespace submax
