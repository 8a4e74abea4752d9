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

#include "submax/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "submax/parallel.hpp"

namespace submax {

namespace {

std::vector<int> checked_candidates(const SetFunctionOracle& f,
                                    SetView candidates) {
  if (candidates.empty()) throw ConfigError("empty candidate set");
  return canonical_subset(f.ground_set(), candidates);
}

void check_budget(int k, std::size_t n_candidates) {
  if (k <= 0 || static_cast<std::size_t>(k) > n_candidates) {
    throw ConfigError("k = " + std::to_string(k) +
                      " outside [1, " + std::to_string(n_candidates) + "]");
  }
}

// One greedy step over `scan`; commits the winner into the session and
// removes it from `remaining`.
SelectionStep greedy_step(GainSession& session, SetView scan,
                          std::vector<int>& remaining) {
  double best_gain = -std::numeric_limits<double>::infinity();
  int best = -1;
  for (int j : scan) {  // ascending, so ties keep the lowest index
    const double g = session.gain(j);
    if (g > best_gain) {
      best_gain = g;
      best = j;
    }
  }
  session.select(best);
  remaining.erase(std::find(remaining.begin(), remaining.end(), best));
  // Each gain() costs exactly one oracle call and select() none, so the
  // step cost is the scan size; counting analytically keeps traces
  // identical under any thread schedule sharing the oracle counter.
  return SelectionStep{best, best_gain, session.value(),
                       static_cast<std::uint64_t>(scan.size()),
                       session.last_select_degenerate()};
}

}  // namespace

SelectionTrace greedy(const SetFunctionOracle& f, SetView candidates, int k) {
  std::vector<int> remaining = checked_candidates(f, candidates);
  check_budget(k, remaining.size());
  auto session = f.make_session();
  SelectionTrace trace;
  trace.steps.reserve(k);
  for (int step = 0; step < k; ++step) {
    trace.steps.push_back(greedy_step(*session, remaining, remaining));
  }
  return trace;
}

int subsample_size(int d, int k, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta = " + std::to_string(delta) +
                      " outside (0, 1)");
  }
  const double raw =
      static_cast<double>(d) * std::log(1.0 / delta) / static_cast<double>(k);
  const int c = static_cast<int>(std::ceil(raw - 1e-9));
  return std::max(c, 1);
}

std::vector<int> subsample(SetView remaining, int d, int k, double delta,
                           RandomSource& rng) {
  const std::size_t count = std::min<std::size_t>(
      static_cast<std::size_t>(subsample_size(d, k, delta)), remaining.size());
  std::vector<int> pool(remaining.begin(), remaining.end());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.uniform_int(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

SelectionTrace stochastic_greedy(const SetFunctionOracle& f,
                                 SetView candidates, int k, double delta,
                                 RandomSource& rng) {
  std::vector<int> remaining = checked_candidates(f, candidates);
  check_budget(k, remaining.size());
  const int d = static_cast<int>(remaining.size());
  auto session = f.make_session();
  SelectionTrace trace;
  trace.steps.reserve(k);
  for (int step = 0; step < k; ++step) {
    const std::vector<int> scan = subsample(remaining, d, k, delta, rng);
    trace.steps.push_back(greedy_step(*session, scan, remaining));
  }
  return trace;
}

std::vector<std::vector<int>> partition_uniform(SetView candidates, int l,
                                                RandomSource& rng) {
  if (l < 1) throw ConfigError("partition needs l >= 1");
  std::vector<int> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<int>> parts(l);
  for (int j : sorted) {
    parts[rng.uniform_int(static_cast<std::uint64_t>(l))].push_back(j);
  }
  return parts;
}

std::vector<std::vector<int>> partition_balanced(SetView candidates, int l,
                                                 RandomSource& rng) {
  if (l < 1) throw ConfigError("partition needs l >= 1");
  std::vector<int> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    const std::size_t j = i + rng.uniform_int(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::vector<int>> parts(l);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    parts[i % l].push_back(pool[i]);
  }
  for (auto& p : parts) std::sort(p.begin(), p.end());
  return parts;
}

std::uint64_t DistributedResult::total_evaluations() const {
  std::uint64_t n = aggregated_trace.total_evaluations();
  for (const auto& t : local_traces) n += t.total_evaluations();
  return n;
}

DistributedResult distributed_run(const std::vector<std::vector<int>>& parts,
                                  const LocalSolver& solver, int k,
                                  int threads) {
  if (k <= 0) throw ConfigError("k must be positive");
  DistributedResult result;
  result.parts = parts;
  result.local_traces.resize(parts.size());
  parallel_for(parts.size(), threads, [&](std::size_t i) {
    if (parts[i].empty()) return;  // empty part, empty local solution
    const int budget = std::min<int>(k, static_cast<int>(parts[i].size()));
    result.local_traces[i] = solver(parts[i], budget);
  });

  std::vector<int> pool;
  for (std::size_t i = 0; i < result.local_traces.size(); ++i) {
    const auto& t = result.local_traces[i];
    const auto sel = t.selected_sorted();
    pool.insert(pool.end(), sel.begin(), sel.end());
    if (!t.steps.empty() &&
        (result.best_local < 0 ||
         t.value() > result.local_traces[result.best_local].value())) {
      result.best_local = static_cast<int>(i);
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.empty()) throw ConfigError("no candidates in any part");

  const int budget = std::min<int>(k, static_cast<int>(pool.size()));
  result.aggregated_trace = solver(pool, budget);

  const double agg = result.aggregated_trace.value();
  const double local = result.best_local_value();
  result.returned_aggregated = agg >= local;
  const SelectionTrace& winner = result.returned_aggregated
                                     ? result.aggregated_trace
                                     : result.local_traces[result.best_local];
  result.returned = winner.selected_in_order();
  result.returned_value = winner.value();
  return result;
}

DistributedResult distributed_greedy(const SetFunctionOracle& f,
                                     SetView candidates, int l, int k,
                                     RandomSource& rng,
                                     const DistributedOptions& options) {
  std::vector<int> sorted = checked_candidates(f, candidates);
  check_budget(k, sorted.size());
  const auto parts = options.balanced_partition
                         ? partition_balanced(sorted, l, rng)
                         : partition_uniform(sorted, l, rng);
  const LocalSolver solver = [&f](const std::vector<int>& cand, int budget) {
    return greedy(f, cand, budget);
  };
  return distributed_run(parts, solver, k, options.threads);
}

}  // namespace submax
