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

#ifndef RWLAB_ANALYSIS_HPP
#define RWLAB_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rwlab/adversary.hpp"
#include "rwlab/fairness.hpp"
#include "rwlab/rational.hpp"

namespace rwlab {

/// A perfect matching of R into unordered pairs.
struct PairPartition {
  std::vector<std::pair<AgentId, AgentId>> pairs;

  /// Throws std::invalid_argument unless the pairs cover `ground` exactly.
  void validate(std::span<const AgentId> ground) const;

  friend bool operator==(const PairPartition&, const PairPartition&) = default;
};

/// Number of pairs with exactly one member in `neighbors` (sorted).
std::size_t split_count(const PairPartition& p, std::span<const AgentId> neighbors);

/// At most a quarter of the pairs are split: 4 * splits <= |pairs|.
bool is_segmentation_for(const PairPartition& p, std::span<const AgentId> neighbors);

/// Conjunction of is_segmentation_for over every i in M (M must lie in L).
bool is_segmentation_for_set(const PairPartition& p, std::span<const AgentId> group,
                             const AdversaryInstance& inst);

/// Orders R by the infimum of each agent's piece and pairs consecutive
/// agents. Throws std::invalid_argument on an empty R piece or a tie.
PairPartition canonical_segmentation(const Allocation& a, const AdversaryInstance& inst);

struct SegmentationEntry {
  AgentId agent = 0;
  std::size_t boundary_count = 0;  // b_i
  std::size_t split_count = 0;     // under the canonical partition
};

struct SegmentationReport {
  PairPartition partition;
  std::vector<SegmentationEntry> entries;  // one per member of M
  bool premise = true;     // every b_i <= m/16
  bool conclusion = true;  // canonical partition segments M
  bool counterexample() const { return premise && !conclusion; }
};

/// Checks "small boundaries imply a segmentation" on a concrete allocation.
/// Requires every piece to have measure 1/n.
SegmentationReport check_boundary_segmentation(const Allocation& a, const AdversaryInstance& inst,
                                               std::span<const AgentId> group);

/// exp(-m/128).
double hoeffding_tail_bound(std::size_t m);

/// (5/8)(m/4): the hit-count threshold of the tail event.
std::size_t split_tail_threshold(std::size_t m);

enum class HitKind {
  Adjacent,     // pair contains a vertex of S_i
  NonAdjacent,  // pair contains a vertex outside S_i
};

/// Exact Pr[#hit pairs <= threshold] over all C(16,8) choices of S_i against
/// a fixed pairing. Only m = 32 is enumerable; other m throw
/// std::invalid_argument. Threshold defaults to split_tail_threshold(32).
Rational exact_split_tail(std::size_t m, std::optional<std::size_t> threshold = std::nullopt,
                          HitKind kind = HitKind::Adjacent);

/// Exact Pr[a fixed pair is hit] at m = 32 by enumeration.
Rational exact_pair_hit_probability(std::size_t m);

struct MonteCarloEstimate {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double lower(double z = 3.0) const { return estimate - z * standard_error; }
  double upper(double z = 3.0) const { return estimate + z * standard_error; }
};

/// Empirical frequency of the tail event over uniform S_i draws. Trials run
/// in fixed-size chunks with per-chunk seeds derived from (seed, chunk), so
/// the result does not depend on the thread count. trials = 0 throws.
MonteCarloEstimate monte_carlo_split_tail(std::size_t m, std::size_t trials, std::uint64_t seed);

/// Natural-log terms of C(m/2, m/4) * (m/2 - 1)!! * 2^(m/4) * exp(-m^2/512).
struct UnionBoundTerms {
  std::size_t m = 0;
  double ln_binomial = 0.0;
  double ln_double_factorial = 0.0;
  double ln_pow2_term = 0.0;
  double exp_term = 0.0;
  double total_log = 0.0;
};

UnionBoundTerms union_bound_log(std::size_t m);

/// Rows for m = m_min, m_min + 32, ..., m_max.
std::vector<UnionBoundTerms> union_bound_scan(std::size_t m_min, std::size_t m_max);

/// First m in the scan whose total log is negative.
std::optional<std::size_t> union_bound_crossing(std::span<const UnionBoundTerms> scan);

/// Calls visit once per perfect matching of `ground` (even size).
void for_each_pair_partition(std::span<const AgentId> ground,
                             const std::function<void(const PairPartition&)>& visit);

/// Number of perfect matchings of k elements, counted by enumeration.
std::uint64_t count_pair_partitions(std::size_t k);

}  // namespace rwlab

#endif  // RWLAB_ANALYSIS_HPP
