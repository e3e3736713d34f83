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

#include "rwlab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "rwlab/parallel.hpp"

namespace rwlab {

namespace {

constexpr std::size_t kEnumerableM = 32;
constexpr std::size_t kChunkTrials = 4096;

bool contains(std::span<const AgentId> sorted, AgentId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

void require_multiple_of_32(std::size_t m) {
  if (m == 0 || m % 32 != 0) {
    throw std::invalid_argument("m must be a positive multiple of 32, got " + std::to_string(m));
  }
}

// Hit pairs among the fixed pairing {0,1}, {2,3}, ... of a bit set.
int hit_pairs(std::uint32_t members, std::size_t pair_count) {
  int hits = 0;
  for (std::size_t j = 0; j < pair_count; ++j) {
    if ((members >> (2 * j)) & 3U) ++hits;
  }
  return hits;
}

template <typename Visit>
void for_each_half_subset(std::size_t ground, Visit&& visit) {
  const std::uint32_t limit = std::uint32_t{1} << ground;
  for (std::uint32_t s = 0; s < limit; ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) == ground / 2) visit(s);
  }
}

void match_rest(std::vector<AgentId>& rest, PairPartition& current,
                const std::function<void(const PairPartition&)>& visit) {
  if (rest.empty()) {
    visit(current);
    return;
  }
  const AgentId first = rest.front();
  for (std::size_t k = 1; k < rest.size(); ++k) {
    const AgentId partner = rest[k];
    std::vector<AgentId> remaining;
    remaining.reserve(rest.size() - 2);
    for (std::size_t t = 1; t < rest.size(); ++t) {
      if (t != k) remaining.push_back(rest[t]);
    }
    current.pairs.emplace_back(first, partner);
    match_rest(remaining, current, visit);
    current.pairs.pop_back();
  }
}

}  // namespace

void PairPartition::validate(std::span<const AgentId> ground) const {
  std::vector<AgentId> covered;
  covered.reserve(2 * pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a == b) throw std::invalid_argument("pair repeats a vertex");
    covered.push_back(a);
    covered.push_back(b);
  }
  std::sort(covered.begin(), covered.end());
  std::vector<AgentId> expected(ground.begin(), ground.end());
  std::sort(expected.begin(), expected.end());
  if (covered != expected) throw std::invalid_argument("pairs do not partition the ground set");
}

std::size_t split_count(const PairPartition& p, std::span<const AgentId> neighbors) {
  std::size_t splits = 0;
  for (const auto& [a, b] : p.pairs) {
    if (contains(neighbors, a) != contains(neighbors, b)) ++splits;
  }
  return splits;
}

bool is_segmentation_for(const PairPartition& p, std::span<const AgentId> neighbors) {
  return 4 * split_count(p, neighbors) <= p.pairs.size();
}

bool is_segmentation_for_set(const PairPartition& p, std::span<const AgentId> group,
                             const AdversaryInstance& inst) {
  for (AgentId i : group) {
    if (inst.side(i) != Side::Left) throw std::invalid_argument("M must be a subset of L");
  }
  return std::all_of(group.begin(), group.end(),
                     [&](AgentId i) { return is_segmentation_for(p, inst.neighborhood(i)); });
}

PairPartition canonical_segmentation(const Allocation& a, const AdversaryInstance& inst) {
  std::vector<AgentId> order(inst.right().begin(), inst.right().end());
  for (AgentId r : order) {
    if (a[r].empty()) throw std::invalid_argument("R agent " + std::to_string(r) + " has no cake");
  }
  std::sort(order.begin(), order.end(),
            [&](AgentId x, AgentId y) { return a[x].inf() < a[y].inf(); });
  PairPartition p;
  for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
    if (a[order[k]].inf() == a[order[k + 1]].inf()) {
      throw std::invalid_argument("two R pieces share an infimum");
    }
    p.pairs.emplace_back(order[k], order[k + 1]);
  }
  return p;
}

SegmentationReport check_boundary_segmentation(const Allocation& a, const AdversaryInstance& inst,
                                               std::span<const AgentId> group) {
  const Rational share(1L, static_cast<long>(inst.n()));
  for (AgentId j = 0; j < a.size(); ++j) {
    if (measure(a[j]) != share) throw std::invalid_argument("every piece must have measure 1/n");
  }
  SegmentationReport report;
  report.partition = canonical_segmentation(a, inst);
  for (AgentId i : group) {
    const AgentBoundary b = agent_boundary(a, inst, i);
    SegmentationEntry e{i, b.count(), split_count(report.partition, inst.neighborhood(i))};
    report.premise = report.premise && 16 * e.boundary_count <= inst.m();
    report.entries.push_back(e);
  }
  report.conclusion = is_segmentation_for_set(report.partition, group, inst);
  return report;
}

double hoeffding_tail_bound(std::size_t m) { return std::exp(-static_cast<double>(m) / 128.0); }

std::size_t split_tail_threshold(std::size_t m) { return 5 * m / 32; }

Rational exact_split_tail(std::size_t m, std::optional<std::size_t> threshold, HitKind kind) {
  if (m != kEnumerableM) {
    throw std::invalid_argument("exact enumeration only at m = 32; use Monte Carlo for m = " +
                                std::to_string(m));
  }
  const std::size_t ground = m / 2;
  const std::size_t pairs = m / 4;
  const std::size_t limit = threshold.value_or(split_tail_threshold(m));
  const std::uint32_t all = (std::uint32_t{1} << ground) - 1;
  long favourable = 0;
  long total = 0;
  for_each_half_subset(ground, [&](std::uint32_t s) {
    const std::uint32_t marked = kind == HitKind::Adjacent ? s : (all & ~s);
    ++total;
    if (static_cast<std::size_t>(hit_pairs(marked, pairs)) <= limit) ++favourable;
  });
  return Rational(favourable, total);
}

Rational exact_pair_hit_probability(std::size_t m) {
  if (m != kEnumerableM) throw std::invalid_argument("exact enumeration only at m = 32");
  long hit = 0;
  long total = 0;
  for_each_half_subset(m / 2, [&](std::uint32_t s) {
    ++total;
    if (s & 3U) ++hit;
  });
  return Rational(hit, total);
}

MonteCarloEstimate monte_carlo_split_tail(std::size_t m, std::size_t trials, std::uint64_t seed) {
  require_multiple_of_32(m);
  if (trials == 0) throw std::invalid_argument("monte carlo needs at least one trial");
  const std::size_t ground = m / 2;
  const std::size_t pick = m / 4;
  const std::size_t limit = split_tail_threshold(m);
  const std::size_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<std::size_t> chunk_hits(chunks, 0);

  parallel_for(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> pool(ground);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<char> member(ground, 0);
    const std::size_t begin = c * kChunkTrials;
    const std::size_t end = std::min(trials, begin + kChunkTrials);
    std::size_t hits = 0;
    for (std::size_t t = begin; t < end; ++t) {
      // Partial Fisher-Yates yields a uniform subset from any pool order.
      for (std::size_t k = 0; k < pick; ++k) {
        std::uniform_int_distribution<std::size_t> d(k, ground - 1);
        std::swap(pool[k], pool[d(rng)]);
      }
      std::fill(member.begin(), member.end(), 0);
      for (std::size_t k = 0; k < pick; ++k) member[pool[k]] = 1;
      std::size_t hit_count = 0;
      for (std::size_t j = 0; j < ground / 2; ++j) {
        if (member[2 * j] || member[2 * j + 1]) ++hit_count;
      }
      if (hit_count <= limit) ++hits;
    }
    chunk_hits[c] = hits;
  });

  MonteCarloEstimate e;
  e.trials = trials;
  e.hits = std::accumulate(chunk_hits.begin(), chunk_hits.end(), std::size_t{0});
  e.estimate = static_cast<double>(e.hits) / static_cast<double>(trials);
  e.standard_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  return e;
}

UnionBoundTerms union_bound_log(std::size_t m) {
  require_multiple_of_32(m);
  const double half = static_cast<double>(m / 2);
  const double quarter = static_cast<double>(m / 4);
  const double md = static_cast<double>(m);
  UnionBoundTerms t;
  t.m = m;
  t.ln_binomial = std::lgamma(half + 1) - 2 * std::lgamma(quarter + 1);
  // (k-1)!! = k! / (2^(k/2) (k/2)!) for even k = m/2.
  t.ln_double_factorial = std::lgamma(half + 1) - quarter * std::numbers::ln2 - std::lgamma(quarter + 1);
  t.ln_pow2_term = quarter * std::numbers::ln2;
  t.exp_term = -md * md / 512.0;
  t.total_log = t.ln_binomial + t.ln_double_factorial + t.ln_pow2_term + t.exp_term;
  return t;
}

std::vector<UnionBoundTerms> union_bound_scan(std::size_t m_min, std::size_t m_max) {
  require_multiple_of_32(m_min);
  std::vector<UnionBoundTerms> rows;
  for (std::size_t m = m_min; m <= m_max; m += 32) rows.push_back(union_bound_log(m));
  return rows;
}

std::optional<std::size_t> union_bound_crossing(std::span<const UnionBoundTerms> scan) {
  for (const auto& row : scan) {
    if (row.total_log < 0) return row.m;
  }
  return std::nullopt;
}

void for_each_pair_partition(std::span<const AgentId> ground,
                             const std::function<void(const PairPartition&)>& visit) {
  if (ground.size() % 2 != 0) throw std::invalid_argument("pair partition needs an even ground set");
  std::vector<AgentId> rest(ground.begin(), ground.end());
  PairPartition current;
  current.pairs.reserve(rest.size() / 2);
  match_rest(rest, current, visit);
}

std::uint64_t count_pair_partitions(std::size_t k) {
  std::vector<AgentId> ground(k);
  std::iota(ground.begin(), ground.end(), AgentId{0});
  std::uint64_t count = 0;
  for_each_pair_partition(ground, [&](const PairPartition&) { ++count; });
  return count;
}

}  // namespace rwlab
