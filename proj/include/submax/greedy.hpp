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

#ifndef SUBMAX_GREEDY_HPP_
#define SUBMAX_GREEDY_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "submax/random_source.hpp"
#include "submax/set_function.hpp"

namespace submax {

// Greedy forward selection: k steps of the best marginal gain over the
// remaining candidates, ties broken toward the lowest element index. A step
// whose best gain is negative still selects, so the trace always has k rows.
// Cost: sum over steps of |remaining| evaluations, i.e. k*|candidates| -
// k(k-1)/2 in total; committing a step reuses the scanned value.
SelectionTrace greedy(const SetFunctionOracle& f, SetView candidates, int k);

// Per-step subsample size: ceil(d * ln(1/delta) / k). The product is nudged
// down by 1e-9 before the ceiling so that analytically integer values (e.g.
// delta = e^-2) do not round up through floating-point noise; the result is
// clamped to at least 1.
int subsample_size(int d, int k, double delta);

// min(subsample_size(d, k, delta), |remaining|) elements drawn uniformly
// without replacement from `remaining`, returned sorted.
std::vector<int> subsample(SetView remaining, int d, int k, double delta,
                           RandomSource& rng);

// Greedy where each step scans a fresh uniform subsample of the remaining
// candidates instead of all of them; d in the subsample size formula is
// |candidates|.
SelectionTrace stochastic_greedy(const SetFunctionOracle& f,
                                 SetView candidates, int k, double delta,
                                 RandomSource& rng);

// Each candidate is assigned to one of l parts independently and uniformly;
// parts may be empty. Candidates are processed in ascending order, so the
// draw sequence is reproducible.
std::vector<std::vector<int>> partition_uniform(SetView candidates, int l,
                                                RandomSource& rng);

// Shuffle followed by round-robin assignment; part sizes differ by at most
// one.
std::vector<std::vector<int>> partition_balanced(SetView candidates, int l,
                                                 RandomSource& rng);

// Solves one part: candidates (sorted, possibly fewer than k) and the step
// budget for this stage.
using LocalSolver =
    std::function<SelectionTrace(const std::vector<int>& candidates, int k)>;

struct DistributedResult {
  std::vector<std::vector<int>> parts;
  // One trace per part; empty parts yield empty traces.
  std::vector<SelectionTrace> local_traces;
  // Solution of the solver run on the union of the local solutions.
  SelectionTrace aggregated_trace;
  // argmax over parts of the local solution value; ties toward the lowest
  // part index; -1 only if every part is empty.
  int best_local = -1;
  // Whether the aggregated solution won the final comparison (ties go to the
  // aggregate).
  bool returned_aggregated = true;
  // Winning selection in pick order, and its value.
  std::vector<int> returned;
  double returned_value = 0.0;

  double aggregated_value() const { return aggregated_trace.value(); }
  double best_local_value() const {
    return best_local < 0 ? 0.0 : local_traces[best_local].value();
  }
  std::uint64_t total_evaluations() const;
};

struct DistributedOptions {
  // Worker threads for the independent local solves. The result is
  // identical for any thread count.
  int threads = 1;
  bool balanced_partition = false;
};

// Two-stage selection over an explicit partition: solve each part with
// budget min(k, |part|), solve the union of the local solutions with budget
// min(k, |union|), and return the better of the aggregate and the best local
// solution.
DistributedResult distributed_run(const std::vector<std::vector<int>>& parts,
                                  const LocalSolver& solver, int k,
                                  int threads = 1);

// distributed_run with greedy() as the solver for both stages and a freshly
// drawn partition of `candidates` into l parts.
DistributedResult distributed_greedy(const SetFunctionOracle& f,
                                     SetView candidates, int l, int k,
                                     RandomSource& rng,
                                     const DistributedOptions& options = {});

}  // namespace submax

#endif  // SUBMAX_GREEDY_HPP_
