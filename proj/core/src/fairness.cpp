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

#include "rwlab/fairness.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace rwlab {

namespace {

void require_profile(const Allocation& a, std::span<const Valuation> v) {
  if (a.size() != v.size()) {
    throw std::invalid_argument("allocation has " + std::to_string(a.size()) +
                                " pieces but profile has " + std::to_string(v.size()) +
                                " valuations");
  }
}

void require_graph(const Allocation& a, const SocialGraph& g) {
  if (a.size() != g.size()) throw std::invalid_argument("graph size does not match allocation");
}

FairnessReport finish(std::vector<Rational> margins) {
  FairnessReport report;
  report.holds = std::none_of(margins.begin(), margins.end(),
                              [](const Rational& m) { return m.sign() < 0; });
  report.margins = std::move(margins);
  return report;
}

template <typename Range>
Rational min_envy_margin(const Allocation& a, const Valuation& vi, AgentId i, const Range& others) {
  const Rational own = value(vi, a[i]);
  std::optional<Rational> worst;
  for (AgentId j : others) {
    if (j == i) continue;
    Rational m = own - value(vi, a[j]);
    if (!worst || m < *worst) worst = std::move(m);
  }
  return worst.value_or(Rational(0));
}

}  // namespace

SocialGraph SocialGraph::complete(std::size_t n) {
  SocialGraph g(n);
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

SocialGraph SocialGraph::path(std::size_t n) {
  SocialGraph g(n);
  for (AgentId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

void SocialGraph::add_edge(AgentId i, AgentId j) {
  if (i >= size() || j >= size()) throw std::invalid_argument("edge names unknown vertex");
  if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(i));
  auto insert = [](std::vector<AgentId>& adj, AgentId x) {
    auto it = std::lower_bound(adj.begin(), adj.end(), x);
    if (it == adj.end() || *it != x) adj.insert(it, x);
  };
  insert(adjacency_[i], j);
  insert(adjacency_[j], i);
}

bool SocialGraph::has_edge(AgentId i, AgentId j) const {
  const auto& adj = adjacency_.at(i);
  return std::binary_search(adj.begin(), adj.end(), j);
}

std::size_t SocialGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

std::vector<std::pair<AgentId, AgentId>> SocialGraph::edges() const {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (AgentId i = 0; i < size(); ++i) {
    for (AgentId j : adjacency_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

bool SocialGraph::is_connected() const {
  if (adjacency_.empty()) return true;
  std::vector<bool> seen(size(), false);
  std::vector<AgentId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const AgentId i = stack.back();
    stack.pop_back();
    for (AgentId j : adjacency_[i]) {
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == size();
}

Allocation::Allocation(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidAllocation("allocation needs at least one agent");
  std::vector<const Interval*> all;
  for (const auto& p : pieces_) {
    for (const auto& iv : p.intervals()) all.push_back(&iv);
  }
  std::sort(all.begin(), all.end(),
            [](const Interval* a, const Interval* b) { return a->lo() < b->lo(); });
  // Sorted intervals must chain end-to-start exactly from 0 to 1.
  Rational frontier(0);
  for (const Interval* iv : all) {
    if (iv->lo() < frontier) {
      throw InvalidAllocation("pieces overlap with positive measure near " + iv->lo().str());
    }
    if (frontier < iv->lo()) {
      throw InvalidAllocation("gap in coverage: [" + frontier.str() + ", " + iv->lo().str() + "]");
    }
    frontier = iv->hi();
  }
  if (frontier != Rational(1)) {
    throw InvalidAllocation("gap in coverage: [" + frontier.str() + ", 1/1]");
  }
}

ValueMatrix value_matrix(const Allocation& a, std::span<const Valuation> v) {
  require_profile(a, v);
  ValueMatrix m(a.size());
  for (AgentId i = 0; i < a.size(); ++i) {
    m[i].reserve(a.size());
    for (AgentId j = 0; j < a.size(); ++j) m[i].push_back(value(v[i], a[j]));
  }
  return m;
}

FairnessReport is_proportional(const Allocation& a, std::span<const Valuation> v) {
  require_profile(a, v);
  const Rational share(1L, static_cast<long>(a.size()));
  std::vector<Rational> margins;
  margins.reserve(a.size());
  for (AgentId i = 0; i < a.size(); ++i) margins.push_back(value(v[i], a[i]) - share);
  return finish(std::move(margins));
}

Rational local_proportionality_margin(const Allocation& a, std::span<const Valuation> v,
                                      const SocialGraph& g, AgentId i) {
  require_profile(a, v);
  require_graph(a, g);
  const auto nbrs = g.neighbors(i);
  if (nbrs.empty()) return Rational(0);
  Rational sum;
  for (AgentId j : nbrs) sum += value(v[i], a[j]);
  return value(v[i], a[i]) - sum / Rational(nbrs.size());
}

FairnessReport is_locally_proportional(const Allocation& a, std::span<const Valuation> v,
                                       const SocialGraph& g) {
  require_profile(a, v);
  require_graph(a, g);
  std::vector<Rational> margins;
  margins.reserve(a.size());
  for (AgentId i = 0; i < a.size(); ++i) {
    margins.push_back(local_proportionality_margin(a, v, g, i));
  }
  return finish(std::move(margins));
}

FairnessReport is_envy_free(const Allocation& a, std::span<const Valuation> v) {
  require_profile(a, v);
  std::vector<AgentId> everyone(a.size());
  for (AgentId j = 0; j < a.size(); ++j) everyone[j] = j;
  std::vector<Rational> margins;
  margins.reserve(a.size());
  for (AgentId i = 0; i < a.size(); ++i) margins.push_back(min_envy_margin(a, v[i], i, everyone));
  return finish(std::move(margins));
}

FairnessReport is_locally_envy_free(const Allocation& a, std::span<const Valuation> v,
                                    const SocialGraph& g) {
  require_profile(a, v);
  require_graph(a, g);
  std::vector<Rational> margins;
  margins.reserve(a.size());
  for (AgentId i = 0; i < a.size(); ++i) {
    margins.push_back(min_envy_margin(a, v[i], i, g.neighbors(i)));
  }
  return finish(std::move(margins));
}

}  // namespace rwlab
