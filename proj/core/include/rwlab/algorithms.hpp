// Copyright 2026 The rwlab Authors
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

#ifndef RWLAB_ALGORITHMS_HPP
#define RWLAB_ALGORITHMS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwlab/fairness.hpp"
#include "rwlab/query.hpp"

namespace rwlab {

struct AlgorithmResult {
  Allocation allocation;
  std::size_t query_count = 0;
  Transcript transcript;
  /// True when the budget ran out and the fallback produced the allocation.
  bool used_fallback = false;
};

/// A procedure sees valuations only through the counting oracle it is given.
using AllocationProcedure = std::function<Allocation(CountingOracle&)>;

/// Builds a complete allocation from whatever was learned before the budget
/// ran out.
using BudgetFallback = std::function<Allocation(const CountingOracle&)>;

struct Algorithm {
  std::string name;
  AllocationProcedure procedure;
  BudgetFallback fallback;
};

/// Default fallback: contiguous equal split in agent-id order.
Allocation equal_split_fallback(const CountingOracle& partial);

/// Runs `algorithm` against `oracle` through a fresh counting wrapper. When a
/// budget is given and exhausted, the fallback supplies the allocation and
/// the transcript holds exactly the queries that were answered.
AlgorithmResult run_algorithm(const Algorithm& algorithm, Oracle& oracle,
                              std::optional<std::size_t> budget = std::nullopt);

Algorithm cut_and_choose_algorithm();
Algorithm even_paz_algorithm();
Algorithm last_diminisher_algorithm();
Algorithm contiguous_algorithm();

/// Lookup by CLI name: "cut-and-choose", "even-paz", "last-diminisher",
/// "contiguous". Throws std::invalid_argument for unknown names.
Algorithm algorithm_by_name(std::string_view name);
std::vector<std::string> algorithm_names();

/// Two agents. Agent 0 halves the cake, agent 1 picks. At most 2 queries.
AlgorithmResult cut_and_choose(Oracle& oracle);

/// Divide-and-conquer proportional protocol. Every recursion level issues
/// one cut per agent and no evals, so uniform agents need
/// q(n) = n + q(ceil(n/2)) + q(floor(n/2)) queries.
AlgorithmResult even_paz(Oracle& oracle);

/// Banach-Knaster: each round every remaining agent may trim the candidate
/// piece down to 1/n of its value; the last trimmer takes it.
AlgorithmResult last_diminisher(Oracle& oracle);

/// Agent ordering[k] receives [k/n, (k+1)/n]. No queries.
AlgorithmResult contiguous_equal_split(std::span<const AgentId> ordering);
Allocation contiguous_allocation(std::span<const AgentId> ordering);

}  // namespace rwlab

#endif  // RWLAB_ALGORITHMS_HPP
