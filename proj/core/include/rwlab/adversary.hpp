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

#ifndef RWLAB_ADVERSARY_HPP
#define RWLAB_ADVERSARY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rwlab/cake.hpp"
#include "rwlab/fairness.hpp"
#include "rwlab/query.hpp"

namespace rwlab {

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Side { Left, Right, Universal };

/// The randomized lower-bound family. Vertices split into L and R of size
/// m/2 each and U of size r = n - m. Every U vertex sees everyone; each
/// i in L is joined to a uniformly random S_i subset of R of size m/4.
///
/// build_instance lays vertices out as L = [0, m/2), R = [m/2, m),
/// U = [m, n); from_parts accepts any layout.
class AdversaryInstance {
 public:
  /// Validates every structural invariant. Throws ConstructionError.
  static AdversaryInstance from_parts(std::size_t n, std::uint64_t seed, std::vector<AgentId> left,
                                      std::vector<AgentId> right, std::vector<AgentId> universal,
                                      std::vector<std::vector<AgentId>> neighborhoods);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t r() const { return n_ - m_; }
  std::uint64_t seed() const { return seed_; }

  std::span<const AgentId> left() const { return left_; }
  std::span<const AgentId> right() const { return right_; }
  std::span<const AgentId> universal() const { return universal_; }
  Side side(AgentId v) const { return sides_.at(v); }

  /// S_i, sorted. Empty for vertices outside L.
  std::span<const AgentId> neighborhood(AgentId i) const { return neighborhoods_.at(i); }

  const SocialGraph& graph() const { return graph_; }

  friend bool operator==(const AdversaryInstance&, const AdversaryInstance&) = default;

 private:
  AdversaryInstance() = default;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<AgentId> left_, right_, universal_;
  std::vector<Side> sides_;
  std::vector<std::vector<AgentId>> neighborhoods_;  // indexed by vertex
  SocialGraph graph_;
};

/// Greatest multiple of 32 strictly below n.
std::size_t construction_m(std::size_t n);

/// 8 * floor((n-1)/32)^2, which equals m^2/128. Requires n >= 33.
std::uint64_t query_budget(std::size_t n);

/// Requires n >= 33; throws ConstructionError otherwise.
AdversaryInstance build_instance(std::size_t n, std::uint64_t seed);

/// eval_i(x, y) = y - x, cut_i(x, alpha) = x + alpha when that fits.
class UniformOracle final : public Oracle {
 public:
  explicit UniformOracle(std::size_t agents) : agents_(agents) {}
  std::size_t agent_count() const override { return agents_; }
  Response answer(const Query& q) override;

 private:
  std::size_t agents_;
};

std::vector<Valuation> uniform_profile(std::size_t n);

/// Certificate that an allocation with unequal measures fails local
/// proportionality under uniform valuations. `comparison` holds the
/// out-edges of H (i -> j iff {i,j} is an edge and |A_i| < |A_j|); `source`
/// has no incoming H-edge and an out-edge to `violated_neighbor`.
struct UniformWitness {
  std::vector<std::vector<AgentId>> comparison;
  AgentId source = 0;
  AgentId violated_neighbor = 0;
};

struct AllEqual {};

/// Throws std::invalid_argument for disconnected graphs or size mismatch.
std::variant<UniformWitness, AllEqual> find_uniform_witness(const Allocation& a, const SocialGraph& g);

/// Endpoints of the (normalized) intervals of p, 0 and 1 included.
std::vector<Rational> boundary_points(const Piece& p);

struct AgentBoundary {
  AgentId agent = 0;
  Piece neighbor_union;         // union of A_j over j in S_i
  std::vector<Rational> points;  // B_i, ascending
  std::size_t count() const { return points.size(); }
};

struct BoundaryProfile {
  std::vector<AgentBoundary> agents;  // one per L vertex, ascending id
  /// Throws std::out_of_range if `agent` is not in L.
  const AgentBoundary& of(AgentId agent) const;
};

BoundaryProfile boundary_profile(const Allocation& a, const AdversaryInstance& inst);
AgentBoundary agent_boundary(const Allocation& a, const AdversaryInstance& inst, AgentId i);

/// A valuation for agent i that agrees with every recorded answer yet makes
/// i strictly prefer its neighbors' average: density 2 on `boosted`, 0 on
/// `emptied`, 1 elsewhere.
struct PerturbationAttack {
  AgentId agent = 0;
  Rational point;
  Rational radius;
  Interval boosted;
  Interval emptied;
  Valuation perturbed;
  Rational margin;  // local-proportionality margin of `agent` under `perturbed`
};

/// Looks for an unqueried interior boundary point of agent i's neighbor
/// union. Points whose emptied side carries value for i itself or for a
/// neighbor outside S_i are skipped, since there the neighbors' average
/// would not rise by the full radius. Every returned attack has been
/// re-checked for transcript consistency and a margin of exactly
/// -radius/deg(i).
///
/// Requires every piece to have measure 1/n (std::invalid_argument otherwise)
/// and i in L.
std::optional<PerturbationAttack> find_perturbation(const Allocation& a, const Transcript& t,
                                                    const QueriedPointSet& qpoints,
                                                    const AdversaryInstance& inst, AgentId i);

struct Verdict {
  enum class Kind { Unrefuted, RefutedUniform, RefutedPerturbation };
  Kind kind = Kind::Unrefuted;
  std::optional<UniformWitness> uniform;
  std::optional<PerturbationAttack> perturbation;

  bool refuted() const { return kind != Kind::Unrefuted; }
  /// Single-line `key=value` record.
  std::string record() const;
};

/// Uniform witness first, then the perturbation sweep over L in ascending
/// id order. Unrefuted does not mean the allocation is provably locally
/// proportional. The transcript must be answerable by uniform valuations;
/// throws std::invalid_argument otherwise.
Verdict attack(const Allocation& a, const Transcript& t, const QueriedPointSet& qpoints,
               const AdversaryInstance& inst);

}  // namespace rwlab

#endif  // RWLAB_ADVERSARY_HPP
