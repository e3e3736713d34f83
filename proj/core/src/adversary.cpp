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

#include "rwlab/adversary.hpp"

#include <algorithm>
#include <iterator>
#include <random>
#include <sstream>
#include <utility>

namespace rwlab {

namespace {

bool is_sorted_unique(const std::vector<AgentId>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

}  // namespace

std::size_t construction_m(std::size_t n) {
  if (n < 33) {
    throw ConstructionError("adversary construction needs n >= 33, got " + std::to_string(n));
  }
  return 32 * ((n - 1) / 32);
}

std::uint64_t query_budget(std::size_t n) {
  if (n < 33) throw ConstructionError("query budget needs n >= 33, got " + std::to_string(n));
  const std::uint64_t blocks = (n - 1) / 32;
  return 8 * blocks * blocks;
}

AdversaryInstance AdversaryInstance::from_parts(std::size_t n, std::uint64_t seed,
                                                std::vector<AgentId> left,
                                                std::vector<AgentId> right,
                                                std::vector<AgentId> universal,
                                                std::vector<std::vector<AgentId>> neighborhoods) {
  const std::size_t m = construction_m(n);
  AdversaryInstance inst;
  inst.n_ = n;
  inst.m_ = m;
  inst.seed_ = seed;

  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::sort(universal.begin(), universal.end());
  if (left.size() != m / 2 || right.size() != m / 2 || universal.size() != n - m) {
    throw ConstructionError("class sizes must be |L| = |R| = m/2 and |U| = n - m");
  }
  std::vector<bool> assigned(n, false);
  inst.sides_.assign(n, Side::Universal);
  auto claim = [&](const std::vector<AgentId>& ids, Side side) {
    for (AgentId v : ids) {
      if (v >= n || assigned[v]) throw ConstructionError("L, R, U must partition the vertices");
      assigned[v] = true;
      inst.sides_[v] = side;
    }
  };
  claim(left, Side::Left);
  claim(right, Side::Right);
  claim(universal, Side::Universal);

  if (neighborhoods.size() != n) throw ConstructionError("need one neighborhood slot per vertex");
  for (AgentId v = 0; v < n; ++v) {
    auto& s = neighborhoods[v];
    std::sort(s.begin(), s.end());
    if (inst.sides_[v] != Side::Left) {
      if (!s.empty()) throw ConstructionError("only L vertices carry an S_i set");
      continue;
    }
    if (s.size() != m / 4 || !is_sorted_unique(s)) {
      throw ConstructionError("S_" + std::to_string(v) + " must hold m/4 distinct vertices");
    }
    for (AgentId r : s) {
      if (r >= n || inst.sides_[r] != Side::Right) {
        throw ConstructionError("S_" + std::to_string(v) + " must lie inside R");
      }
    }
  }

  SocialGraph g(n);
  for (AgentId u : universal) {
    for (AgentId v = 0; v < n; ++v) {
      if (v != u) g.add_edge(u, v);
    }
  }
  for (AgentId i : left) {
    for (AgentId r : neighborhoods[i]) g.add_edge(i, r);
  }

  inst.left_ = std::move(left);
  inst.right_ = std::move(right);
  inst.universal_ = std::move(universal);
  inst.neighborhoods_ = std::move(neighborhoods);
  inst.graph_ = std::move(g);
  return inst;
}

AdversaryInstance build_instance(std::size_t n, std::uint64_t seed) {
  const std::size_t m = construction_m(n);
  const std::size_t half = m / 2;
  std::vector<AgentId> left(half), right(half), universal(n - m);
  for (std::size_t k = 0; k < half; ++k) {
    left[k] = k;
    right[k] = half + k;
  }
  for (std::size_t k = 0; k < n - m; ++k) universal[k] = m + k;

  // Partial Fisher-Yates over a fresh copy of R for every i in L.
  std::mt19937_64 rng(seed);
  std::vector<std::vector<AgentId>> neighborhoods(n);
  for (AgentId i : left) {
    std::vector<AgentId> pool = right;
    for (std::size_t k = 0; k < m / 4; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
      std::swap(pool[k], pool[pick(rng)]);
    }
    pool.resize(m / 4);
    std::sort(pool.begin(), pool.end());
    neighborhoods[i] = std::move(pool);
  }
  return AdversaryInstance::from_parts(n, seed, std::move(left), std::move(right),
                                       std::move(universal), std::move(neighborhoods));
}

Response UniformOracle::answer(const Query& q) {
  if (q.agent >= agents_) throw std::invalid_argument("query names unknown agent");
  const Rational zero(0), one(1);
  if (const auto* e = std::get_if<EvalQuery>(&q.kind)) {
    if (e->x < zero || e->y > one || e->y < e->x) {
      throw std::invalid_argument("eval query needs 0 <= x <= y <= 1");
    }
    return e->y - e->x;
  }
  const auto& c = std::get<CutQuery>(q.kind);
  if (c.x < zero || c.x > one || c.alpha < zero || c.alpha > one) {
    throw std::invalid_argument("cut query needs x, alpha in [0,1]");
  }
  Rational y = c.x + c.alpha;
  if (y > one) return std::nullopt;
  return y;
}

std::vector<Valuation> uniform_profile(std::size_t n) {
  return std::vector<Valuation>(n, Valuation::uniform());
}

std::variant<UniformWitness, AllEqual> find_uniform_witness(const Allocation& a,
                                                            const SocialGraph& g) {
  if (a.size() != g.size()) throw std::invalid_argument("graph size does not match allocation");
  if (!g.is_connected()) throw std::invalid_argument("uniform witness needs a connected graph");
  const std::size_t n = a.size();
  std::vector<Rational> size;
  size.reserve(n);
  for (AgentId i = 0; i < n; ++i) size.push_back(measure(a[i]));
  if (std::all_of(size.begin(), size.end(), [&](const Rational& s) { return s == size.front(); })) {
    return AllEqual{};
  }

  UniformWitness w;
  w.comparison.resize(n);
  for (const auto& [i, j] : g.edges()) {
    if (size[i] < size[j]) w.comparison[i].push_back(j);
    if (size[j] < size[i]) w.comparison[j].push_back(i);
  }
  for (auto& out : w.comparison) std::sort(out.begin(), out.end());

  // The smallest measure among vertices with an out-edge cannot have an
  // in-edge, so it is a source of H.
  std::optional<AgentId> source;
  for (AgentId i = 0; i < n; ++i) {
    if (w.comparison[i].empty()) continue;
    if (!source || size[i] < size[*source]) source = i;
  }
  if (!source) throw std::logic_error("connected graph with unequal measures but no H edge");
  w.source = *source;
  w.violated_neighbor = w.comparison[*source].front();
  return w;
}

std::vector<Rational> boundary_points(const Piece& p) {
  std::vector<Rational> pts;
  pts.reserve(2 * p.size());
  for (const auto& iv : p.intervals()) {
    pts.push_back(iv.lo());
    pts.push_back(iv.hi());
  }
  return pts;
}

const AgentBoundary& BoundaryProfile::of(AgentId agent) const {
  for (const auto& b : agents) {
    if (b.agent == agent) return b;
  }
  throw std::out_of_range("agent " + std::to_string(agent) + " is not in L");
}

AgentBoundary agent_boundary(const Allocation& a, const AdversaryInstance& inst, AgentId i) {
  if (inst.side(i) != Side::Left) throw std::out_of_range("agent " + std::to_string(i) + " is not in L");
  std::vector<Piece> pieces;
  for (AgentId j : inst.neighborhood(i)) pieces.push_back(a[j]);
  AgentBoundary b;
  b.agent = i;
  b.neighbor_union = piece_union(pieces);
  b.points = boundary_points(b.neighbor_union);
  return b;
}

BoundaryProfile boundary_profile(const Allocation& a, const AdversaryInstance& inst) {
  if (a.size() != inst.n()) throw std::invalid_argument("allocation size does not match instance");
  BoundaryProfile profile;
  for (AgentId i : inst.left()) profile.agents.push_back(agent_boundary(a, inst, i));
  return profile;
}

namespace {

Rational nearest_distance(const std::set<Rational>& pts, const Rational& x) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& p) {
    Rational d = abs(p - x);
    if (!best || d < *best) best = std::move(d);
  };
  auto it = pts.lower_bound(x);
  if (it != pts.end()) consider(*it);
  if (it != pts.begin()) consider(*std::prev(it));
  return best.value_or(Rational(1));
}

Valuation perturbed_uniform(const Rational& lo, const Rational& mid, const Rational& hi,
                            const Rational& left_density, const Rational& right_density) {
  std::vector<Rational> bps{Rational(0)};
  std::vector<Rational> dens;
  auto push = [&](const Rational& end, const Rational& d) {
    if (bps.back() < end) {
      bps.push_back(end);
      dens.push_back(d);
    }
  };
  push(lo, Rational(1));
  push(mid, left_density);
  push(hi, right_density);
  push(Rational(1), Rational(1));
  return Valuation(std::move(bps), std::move(dens));
}

}  // namespace

std::optional<PerturbationAttack> find_perturbation(const Allocation& a, const Transcript& t,
                                                    const QueriedPointSet& qpoints,
                                                    const AdversaryInstance& inst, AgentId i) {
  const std::size_t n = inst.n();
  if (a.size() != n) throw std::invalid_argument("allocation size does not match instance");
  const Rational share(1L, static_cast<long>(n));
  for (AgentId j = 0; j < n; ++j) {
    if (measure(a[j]) != share) {
      throw std::invalid_argument("perturbation attack needs every piece to have measure 1/n");
    }
  }
  const AgentBoundary boundary = agent_boundary(a, inst, i);
  const auto& queried = qpoints.points(i);
  const Rational zero(0), one(1);

  // Pieces whose value to i must not drop: i's own and those of neighbors
  // outside S_i.
  std::vector<AgentId> guarded{i};
  for (AgentId j : inst.graph().neighbors(i)) {
    if (!std::binary_search(inst.neighborhood(i).begin(), inst.neighborhood(i).end(), j)) {
      guarded.push_back(j);
    }
  }

  const auto& pts = boundary.points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Rational& x = pts[k];
    if (x == zero || x == one || queried.contains(x)) continue;

    Rational eps = min(x, one - x);
    if (k > 0) eps = min(eps, x - pts[k - 1]);
    if (k + 1 < pts.size()) eps = min(eps, pts[k + 1] - x);
    eps = min(eps, nearest_distance(queried, x));

    const Rational lo = x - eps;
    const Rational hi = x + eps;
    const bool left_inside = overlap_measure(boundary.neighbor_union, lo, x) == eps;
    Interval boosted = left_inside ? Interval(lo, x) : Interval(x, hi);
    Interval emptied = left_inside ? Interval(x, hi) : Interval(lo, x);
    if (overlap_measure(boundary.neighbor_union, boosted.lo(), boosted.hi()) != eps ||
        !overlap_measure(boundary.neighbor_union, emptied.lo(), emptied.hi()).is_zero()) {
      throw std::logic_error("boundary point does not separate the neighbor union");
    }
    const bool hits_guarded = std::any_of(guarded.begin(), guarded.end(), [&](AgentId j) {
      return !overlap_measure(a[j], emptied.lo(), emptied.hi()).is_zero();
    });
    if (hits_guarded) continue;

    Valuation perturbed = left_inside
                              ? perturbed_uniform(lo, x, hi, Rational(2), Rational(0))
                              : perturbed_uniform(lo, x, hi, Rational(0), Rational(2));
    std::vector<Valuation> profile = uniform_profile(n);
    profile[i] = perturbed;
    if (!is_consistent(t, profile)) {
      throw std::logic_error("perturbation contradicts the transcript");
    }
    Rational margin = local_proportionality_margin(a, profile, inst.graph(), i);
    if (margin != -eps / Rational(inst.graph().degree(i))) {
      throw std::logic_error("perturbation margin differs from -eps/deg(i)");
    }
    return PerturbationAttack{i,
                              x,
                              eps,
                              std::move(boosted),
                              std::move(emptied),
                              std::move(perturbed),
                              std::move(margin)};
  }
  return std::nullopt;
}

std::string Verdict::record() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Unrefuted:
      os << "verdict=unrefuted";
      break;
    case Kind::RefutedUniform:
      os << "verdict=refuted kind=uniform agent=" << uniform->source
         << " neighbor=" << uniform->violated_neighbor;
      break;
    case Kind::RefutedPerturbation:
      os << "verdict=refuted kind=perturbation agent=" << perturbation->agent
         << " x=" << perturbation->point << " epsilon=" << perturbation->radius
         << " margin=" << perturbation->margin;
      break;
  }
  return os.str();
}

Verdict attack(const Allocation& a, const Transcript& t, const QueriedPointSet& qpoints,
               const AdversaryInstance& inst) {
  if (a.size() != inst.n()) throw std::invalid_argument("allocation size does not match instance");
  if (!is_consistent(t, uniform_profile(inst.n()))) {
    throw std::invalid_argument("transcript was not answered by uniform valuations");
  }
  Verdict verdict;
  auto witness = find_uniform_witness(a, inst.graph());
  if (auto* w = std::get_if<UniformWitness>(&witness)) {
    verdict.kind = Verdict::Kind::RefutedUniform;
    verdict.uniform = std::move(*w);
    return verdict;
  }
  for (AgentId i : inst.left()) {
    if (auto found = find_perturbation(a, t, qpoints, inst, i)) {
      verdict.kind = Verdict::Kind::RefutedPerturbation;
      verdict.perturbation = std::move(found);
      return verdict;
    }
  }
  return verdict;
}

}  // namespace rwlab
