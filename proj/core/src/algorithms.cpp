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

#include "rwlab/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace rwlab {

namespace {

Rational require_cut(CountingOracle& oracle, AgentId agent, const Rational& x,
                     const Rational& alpha) {
  auto y = oracle.cut(agent, x, alpha);
  if (!y) {
    throw std::logic_error("agent " + std::to_string(agent) +
                           " could not answer a cut its own value guarantees");
  }
  return std::move(*y);
}

std::vector<AgentId> identity_ordering(std::size_t n) {
  std::vector<AgentId> ids(n);
  std::iota(ids.begin(), ids.end(), AgentId{0});
  return ids;
}

Allocation from_intervals(std::vector<std::vector<Interval>> per_agent) {
  std::vector<Piece> pieces;
  pieces.reserve(per_agent.size());
  for (auto& ivs : per_agent) pieces.emplace_back(std::move(ivs));
  return Allocation(std::move(pieces));
}

// An agent together with a lower bound on its value for the current
// subinterval. Claims start at 1 (the whole cake) and shrink by the group
// fraction at every split, so no eval queries are needed.
struct Claimant {
  AgentId agent;
  Rational claim;
};

void even_paz_split(CountingOracle& oracle, std::vector<Claimant> group, const Rational& lo,
                    const Rational& hi, std::vector<std::vector<Interval>>& out) {
  if (group.size() == 1) {
    out[group.front().agent].emplace_back(lo, hi);
    return;
  }
  const std::size_t n = group.size();
  const std::size_t k = (n + 1) / 2;
  const Rational left_fraction(static_cast<long>(k), static_cast<long>(n));
  const Rational right_fraction(static_cast<long>(n - k), static_cast<long>(n));

  std::vector<Rational> marks;
  marks.reserve(n);
  for (const auto& c : group) marks.push_back(require_cut(oracle, c.agent, lo, left_fraction * c.claim));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (marks[a] != marks[b]) return marks[a] < marks[b];
    return group[a].agent < group[b].agent;
  });
  const Rational split = marks[order[k - 1]];

  std::vector<Claimant> left, right;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& c = group[order[r]];
    if (r < k) {
      left.push_back({c.agent, c.claim * left_fraction});
    } else {
      right.push_back({c.agent, c.claim * right_fraction});
    }
  }
  auto by_id = [](const Claimant& a, const Claimant& b) { return a.agent < b.agent; };
  std::sort(left.begin(), left.end(), by_id);
  std::sort(right.begin(), right.end(), by_id);
  even_paz_split(oracle, std::move(left), lo, split, out);
  even_paz_split(oracle, std::move(right), split, hi, out);
}

Allocation even_paz_procedure(CountingOracle& oracle) {
  const std::size_t n = oracle.agent_count();
  if (n == 0) throw std::invalid_argument("even-paz needs at least one agent");
  std::vector<Claimant> everyone;
  for (AgentId i = 0; i < n; ++i) everyone.push_back({i, Rational(1)});
  std::vector<std::vector<Interval>> out(n);
  even_paz_split(oracle, std::move(everyone), Rational(0), Rational(1), out);
  return from_intervals(std::move(out));
}

Allocation last_diminisher_procedure(CountingOracle& oracle) {
  const std::size_t n = oracle.agent_count();
  if (n == 0) throw std::invalid_argument("last-diminisher needs at least one agent");
  const Rational share(1L, static_cast<long>(n));
  std::vector<AgentId> remaining = identity_ordering(n);
  std::vector<std::vector<Interval>> out(n);
  Rational left_end(0);
  while (remaining.size() > 1) {
    std::optional<Rational> trimmed;
    std::size_t holder = 0;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      Rational y = require_cut(oracle, remaining[r], left_end, share);
      if (!trimmed || y < *trimmed) {
        trimmed = std::move(y);
        holder = r;
      }
    }
    out[remaining[holder]].emplace_back(left_end, *trimmed);
    left_end = *trimmed;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(holder));
  }
  out[remaining.front()].emplace_back(left_end, Rational(1));
  return from_intervals(std::move(out));
}

Allocation cut_and_choose_procedure(CountingOracle& oracle) {
  if (oracle.agent_count() != 2) throw std::invalid_argument("cut-and-choose needs exactly 2 agents");
  const Rational half(1L, 2L);
  const Rational mid = require_cut(oracle, 0, Rational(0), half);
  const Rational chooser_left = oracle.eval(1, Rational(0), mid);
  Piece left{Interval(Rational(0), mid)};
  Piece right{Interval(mid, Rational(1))};
  if (chooser_left > half) return Allocation({std::move(right), std::move(left)});
  return Allocation({std::move(left), std::move(right)});
}

Allocation contiguous_procedure(CountingOracle& oracle) {
  return contiguous_allocation(identity_ordering(oracle.agent_count()));
}

}  // namespace

Allocation equal_split_fallback(const CountingOracle& partial) {
  return contiguous_allocation(identity_ordering(partial.agent_count()));
}

AlgorithmResult run_algorithm(const Algorithm& algorithm, Oracle& oracle,
                              std::optional<std::size_t> budget) {
  CountingOracle counter(oracle, budget);
  std::optional<Allocation> allocation;
  bool used_fallback = false;
  try {
    allocation.emplace(algorithm.procedure(counter));
  } catch (const BudgetExhausted&) {
    const auto& fallback = algorithm.fallback ? algorithm.fallback : BudgetFallback(equal_split_fallback);
    allocation.emplace(fallback(counter));
    used_fallback = true;
  }
  const std::size_t count = counter.total();
  return AlgorithmResult{std::move(*allocation), count, counter.take_transcript(), used_fallback};
}

Algorithm cut_and_choose_algorithm() {
  return {"cut-and-choose", cut_and_choose_procedure, equal_split_fallback};
}
Algorithm even_paz_algorithm() { return {"even-paz", even_paz_procedure, equal_split_fallback}; }
Algorithm last_diminisher_algorithm() {
  return {"last-diminisher", last_diminisher_procedure, equal_split_fallback};
}
Algorithm contiguous_algorithm() { return {"contiguous", contiguous_procedure, equal_split_fallback}; }

std::vector<std::string> algorithm_names() {
  return {"cut-and-choose", "even-paz", "last-diminisher", "contiguous"};
}

Algorithm algorithm_by_name(std::string_view name) {
  if (name == "cut-and-choose") return cut_and_choose_algorithm();
  if (name == "even-paz") return even_paz_algorithm();
  if (name == "last-diminisher") return last_diminisher_algorithm();
  if (name == "contiguous") return contiguous_algorithm();
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

AlgorithmResult cut_and_choose(Oracle& oracle) { return run_algorithm(cut_and_choose_algorithm(), oracle); }
AlgorithmResult even_paz(Oracle& oracle) { return run_algorithm(even_paz_algorithm(), oracle); }
AlgorithmResult last_diminisher(Oracle& oracle) {
  return run_algorithm(last_diminisher_algorithm(), oracle);
}

Allocation contiguous_allocation(std::span<const AgentId> ordering) {
  const std::size_t n = ordering.size();
  if (n == 0) throw std::invalid_argument("ordering is empty");
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Interval>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const AgentId agent = ordering[k];
    if (agent >= n || seen[agent]) throw std::invalid_argument("ordering is not a permutation");
    seen[agent] = true;
    out[agent].emplace_back(Rational(static_cast<long>(k), static_cast<long>(n)),
                            Rational(static_cast<long>(k + 1), static_cast<long>(n)));
  }
  return from_intervals(std::move(out));
}

AlgorithmResult contiguous_equal_split(std::span<const AgentId> ordering) {
  return AlgorithmResult{contiguous_allocation(ordering), 0, Transcript{}, false};
}

}  // namespace rwlab
