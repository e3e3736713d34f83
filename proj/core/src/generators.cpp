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

#include "rwlab/generators.hpp"

#include <algorithm>
#include <numeric>

namespace rwlab {

namespace {

// k distinct sorted interior grid points in (0, grid).
std::vector<long> interior_cuts(std::mt19937_64& rng, std::size_t k, long grid) {
  std::vector<long> all(static_cast<std::size_t>(grid - 1));
  std::iota(all.begin(), all.end(), 1L);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(k, all.size()));
  std::sort(all.begin(), all.end());
  return all;
}

Allocation assemble(std::size_t n, const std::vector<long>& edges, long grid,
                    const std::vector<AgentId>& owner) {
  std::vector<std::vector<Interval>> per_agent(n);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    per_agent[owner[k]].emplace_back(Rational(edges[k], grid), Rational(edges[k + 1], grid));
  }
  std::vector<Piece> pieces;
  pieces.reserve(n);
  for (auto& ivs : per_agent) pieces.emplace_back(std::move(ivs));
  return Allocation(std::move(pieces));
}

}  // namespace

Valuation random_valuation(std::mt19937_64& rng, std::size_t segments, long grid) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, segments));
  std::vector<long> cuts = interior_cuts(rng, count(rng) - 1, grid);
  std::vector<Rational> bps{Rational(0)};
  for (long c : cuts) bps.emplace_back(c, grid);
  bps.emplace_back(1);

  std::uniform_int_distribution<long> weight(0, 5);
  std::vector<Rational> weights;
  Rational mass;
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    weights.emplace_back(weight(rng));
    mass += weights.back() * (bps[k + 1] - bps[k]);
  }
  if (mass.is_zero()) {
    weights.assign(weights.size(), Rational(1));
    mass = Rational(1);
  }
  for (auto& w : weights) w /= mass;
  return Valuation(std::move(bps), std::move(weights));
}

std::vector<Valuation> random_profile(std::mt19937_64& rng, std::size_t n, std::size_t segments,
                                      long grid) {
  std::vector<Valuation> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_valuation(rng, segments, grid));
  return out;
}

SocialGraph random_graph(std::mt19937_64& rng, std::size_t n, double edge_probability) {
  std::bernoulli_distribution coin(edge_probability);
  SocialGraph g(n);
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      if (coin(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

Allocation random_allocation(std::mt19937_64& rng, std::size_t n, std::size_t slots_per_agent) {
  const std::size_t cells = std::max<std::size_t>(1, n * slots_per_agent);
  const long grid = static_cast<long>(4 * cells);
  std::vector<long> edges{0};
  for (long c : interior_cuts(rng, cells - 1, grid)) edges.push_back(c);
  edges.push_back(grid);
  std::uniform_int_distribution<AgentId> who(0, n - 1);
  std::vector<AgentId> owner(edges.size() - 1);
  for (auto& o : owner) o = who(rng);
  return assemble(n, edges, grid, owner);
}

Allocation random_equal_allocation(std::mt19937_64& rng, std::size_t n, std::size_t slots_per_agent) {
  const std::size_t cells = n * slots_per_agent;
  std::vector<long> edges(cells + 1);
  std::iota(edges.begin(), edges.end(), 0L);
  std::vector<AgentId> owner(cells);
  for (std::size_t k = 0; k < cells; ++k) owner[k] = k / slots_per_agent;
  std::shuffle(owner.begin(), owner.end(), rng);
  return assemble(n, edges, static_cast<long>(cells), owner);
}

std::vector<Valuation> worked_example_profile() {
  const Rational quarter(1L, 4L), three_quarters(3L, 4L);
  return {
      Valuation({Rational(0), quarter, Rational(1)}, {Rational(4), Rational(0)}),
      Valuation::uniform(),
      Valuation({Rational(0), three_quarters, Rational(1)}, {Rational(0), Rational(4)}),
  };
}

SocialGraph worked_example_graph() { return SocialGraph::path(3); }

}  // namespace rwlab
