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

#ifndef RWLAB_GENERATORS_HPP
#define RWLAB_GENERATORS_HPP

#include <cstddef>
#include <random>
#include <vector>

#include "rwlab/cake.hpp"
#include "rwlab/fairness.hpp"

namespace rwlab {

/// Random piecewise-constant valuation with up to `segments` pieces on a
/// rational grid of the given resolution; some densities may be zero.
Valuation random_valuation(std::mt19937_64& rng, std::size_t segments = 4,
                           long grid = 24);

std::vector<Valuation> random_profile(std::mt19937_64& rng, std::size_t n,
                                      std::size_t segments = 4, long grid = 24);

/// Erdos-Renyi G(n, p).
SocialGraph random_graph(std::mt19937_64& rng, std::size_t n, double edge_probability);

/// Random cover of [0,1] by `n * slots_per_agent` grid cells of random
/// width, each assigned to a random agent. Measures are generally unequal
/// and agents may receive nothing.
Allocation random_allocation(std::mt19937_64& rng, std::size_t n, std::size_t slots_per_agent = 2);

/// Every agent receives exactly `slots_per_agent` cells of width
/// 1/(n * slots_per_agent), scattered at random, so each measure is 1/n.
Allocation random_equal_allocation(std::mt19937_64& rng, std::size_t n,
                                   std::size_t slots_per_agent = 2);

/// The three-agent worked example: agent 0 values only [0,1/4], agent 1 is
/// uniform, agent 2 values only [3/4,1], on the path 0 - 1 - 2.
std::vector<Valuation> worked_example_profile();
SocialGraph worked_example_graph();

}  // namespace rwlab

#endif  // RWLAB_GENERATORS_HPP
