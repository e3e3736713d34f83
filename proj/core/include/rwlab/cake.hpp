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

#ifndef RWLAB_CAKE_HPP
#define RWLAB_CAKE_HPP

#include <optional>
#include <span>
#include <vector>

#include "rwlab/rational.hpp"

namespace rwlab {

/// Closed subinterval [lo, hi] of the cake with 0 <= lo < hi <= 1.
class Interval {
 public:
  /// Throws std::invalid_argument unless 0 <= lo < hi <= 1.
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

/// A piece of cake: finite union of closed intervals of positive length,
/// stored sorted with disjoint interiors and touching intervals merged.
/// The empty piece is representable (an agent may receive nothing).
class Piece {
 public:
  Piece() = default;
  explicit Piece(std::vector<Interval> raw);
  Piece(std::initializer_list<Interval> raw) : Piece(std::vector<Interval>(raw)) {}

  std::span<const Interval> intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  /// Infimum of the piece. Precondition: non-empty.
  const Rational& inf() const;

  friend bool operator==(const Piece&, const Piece&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// Canonical form of a union of intervals. Overlapping inputs are merged.
Piece normalize_piece(std::vector<Interval> raw);

Rational measure(const Piece& p);

/// Union of several pieces, normalized.
Piece piece_union(std::span<const Piece> pieces);

/// Lebesgue measure of the intersection of a piece with [lo, hi].
Rational overlap_measure(const Piece& p, const Rational& lo, const Rational& hi);

/// Piecewise-constant probability density on [0,1].
class Valuation {
 public:
  /// breakpoints: 0 = t_0 < t_1 < ... < t_k = 1; densities: k nonnegative
  /// values integrating to exactly 1. Throws std::invalid_argument otherwise.
  Valuation(std::vector<Rational> breakpoints, std::vector<Rational> densities);

  static Valuation uniform();

  std::span<const Rational> breakpoints() const { return breakpoints_; }
  std::span<const Rational> densities() const { return densities_; }

  /// Cumulative value F(t) = v([0, t]).
  Rational cdf(const Rational& t) const;

  /// Density on the open segment containing t (right-continuous at breakpoints).
  const Rational& density_at(const Rational& t) const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.breakpoints_ == b.breakpoints_ && a.densities_ == b.densities_;
  }

 private:
  std::size_t segment_of(const Rational& t) const;

  std::vector<Rational> breakpoints_;
  std::vector<Rational> densities_;
  std::vector<Rational> cumulative_;  // F at each breakpoint
};

Rational value(const Valuation& v, const Piece& p);

/// v([x, y]). Throws std::invalid_argument unless 0 <= x <= y <= 1.
Rational eval(const Valuation& v, const Rational& x, const Rational& y);

/// Smallest y >= x with v([x, y]) = alpha, or nullopt when v([x, 1]) < alpha.
/// Throws std::invalid_argument unless x and alpha lie in [0, 1].
std::optional<Rational> cut(const Valuation& v, const Rational& x, const Rational& alpha);

/// Left-anchored subinterval [interval.lo, y] holding lambda times the value
/// of `interval`. Returns nullopt when that share is zero.
std::optional<Interval> divide(const Valuation& v, const Interval& interval, const Rational& lambda);

}  // namespace rwlab

#endif  // RWLAB_CAKE_HPP
