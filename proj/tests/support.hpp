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

// Shared helpers for the unit and acceptance suites.

#ifndef RWLAB_TESTS_SUPPORT_HPP
#define RWLAB_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "rwlab/cake.hpp"
#include "rwlab/fairness.hpp"

namespace rwlab::testing {

inline Rational q(long num, long den = 1) { return Rational(num, den); }

inline Interval iv(Rational lo, Rational hi) { return Interval(std::move(lo), std::move(hi)); }

inline Piece piece(std::initializer_list<std::pair<Rational, Rational>> parts) {
  std::vector<Interval> raw;
  for (const auto& [lo, hi] : parts) raw.emplace_back(lo, hi);
  return Piece(std::move(raw));
}

/// The five worked allocations on the three-agent path example, in order.
inline std::vector<Allocation> worked_example_allocations() {
  return {
      Allocation({piece({{q(0), q(1, 4)}}), piece({{q(1, 4), q(3, 4)}}), piece({{q(3, 4), q(1)}})}),
      Allocation({piece({{q(0), q(1, 16)}}), piece({{q(1, 4), q(3, 4)}}),
                  piece({{q(1, 16), q(1, 4)}, {q(3, 4), q(1)}})}),
      Allocation({piece({{q(0), q(1, 16)}}), piece({{q(1, 4), q(11, 16)}}),
                  piece({{q(1, 16), q(1, 4)}, {q(11, 16), q(1)}})}),
      Allocation({piece({{q(0), q(1, 12)}}), piece({{q(1, 12), q(3, 4)}}), piece({{q(3, 4), q(1)}})}),
      Allocation({piece({{q(1, 4), q(1, 2)}}), piece({{q(0), q(1, 4)}, {q(3, 4), q(1)}}),
                  piece({{q(1, 2), q(3, 4)}})}),
  };
}

/// Expected (proportional, locally proportional, envy-free, locally
/// envy-free) for each worked allocation, as classified in the text.
struct FourFlags {
  bool proportional, locally_proportional, envy_free, locally_envy_free;
};

inline std::vector<FourFlags> worked_example_expected() {
  return {
      {true, true, true, true},
      {false, true, false, true},
      {false, true, false, false},
      {true, false, false, false},
      {false, false, false, false},
  };
}

/// Random rational in [0,1] on a grid of the given resolution.
inline Rational random_grid_point(std::mt19937_64& rng, long grid) {
  std::uniform_int_distribution<long> d(0, grid);
  return Rational(d(rng), grid);
}

}  // namespace rwlab::testing

#endif  // RWLAB_TESTS_SUPPORT_HPP
