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

#ifndef RWLAB_FAIRNESS_HPP
#define RWLAB_FAIRNESS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rwlab/cake.hpp"
#include "rwlab/query.hpp"

namespace rwlab {

/// Undirected simple graph on agents 0..n-1.
class SocialGraph {
 public:
  explicit SocialGraph(std::size_t n = 0) : adjacency_(n) {}

  static SocialGraph complete(std::size_t n);
  static SocialGraph path(std::size_t n);

  /// Throws std::invalid_argument on self-loops or unknown vertices.
  /// Re-adding an existing edge is a no-op.
  void add_edge(AgentId i, AgentId j);
  bool has_edge(AgentId i, AgentId j) const;

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  std::size_t degree(AgentId i) const { return adjacency_.at(i).size(); }
  /// Sorted ascending.
  std::span<const AgentId> neighbors(AgentId i) const { return adjacency_.at(i); }
  std::vector<std::pair<AgentId, AgentId>> edges() const;
  bool is_connected() const;

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::vector<std::vector<AgentId>> adjacency_;
};

class InvalidAllocation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One piece per agent; pieces cover [0,1] exactly and overlap only at
/// endpoints.
class Allocation {
 public:
  /// Throws InvalidAllocation on gaps or positive-measure overlaps.
  explicit Allocation(std::vector<Piece> pieces);

  std::size_t size() const { return pieces_.size(); }
  const Piece& operator[](AgentId i) const { return pieces_.at(i); }
  std::span<const Piece> pieces() const { return pieces_; }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<Piece> pieces_;
};

/// Predicate outcome plus per-agent slack. A negative margin marks an agent
/// for whom the inequality fails.
struct FairnessReport {
  bool holds = true;
  std::vector<Rational> margins;
};

/// values[i][j] = v_i(A_j).
using ValueMatrix = std::vector<std::vector<Rational>>;
ValueMatrix value_matrix(const Allocation& a, std::span<const Valuation> v);

/// margin_i = v_i(A_i) - 1/n
FairnessReport is_proportional(const Allocation& a, std::span<const Valuation> v);

/// margin_i = v_i(A_i) - (1/deg i) sum_{j in N(i)} v_i(A_j); isolated agents
/// get margin 0 and pass.
FairnessReport is_locally_proportional(const Allocation& a, std::span<const Valuation> v,
                                       const SocialGraph& g);

/// margin_i = min over j != i of v_i(A_i) - v_i(A_j); 0 when n = 1.
FairnessReport is_envy_free(const Allocation& a, std::span<const Valuation> v);

/// Same as is_envy_free but only over graph neighbors.
FairnessReport is_locally_envy_free(const Allocation& a, std::span<const Valuation> v,
                                    const SocialGraph& g);

/// The local-proportionality margin of a single agent.
Rational local_proportionality_margin(const Allocation& a, std::span<const Valuation> v,
                                      const SocialGraph& g, AgentId i);

}  // namespace rwlab

#endif  // RWLAB_FAIRNESS_HPP
