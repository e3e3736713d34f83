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

#include "rwlab/cake.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace rwlab {

namespace {

const Rational kZero{0};
const Rational kOne{1};

void require_unit(const Rational& x, const char* what) {
  if (x < kZero || x > kOne) {
    throw std::invalid_argument(std::string(what) + " outside [0,1]: " + x.str());
  }
}

}  // namespace

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_unit(lo_, "interval endpoint");
  require_unit(hi_, "interval endpoint");
  if (!(lo_ < hi_)) {
    throw std::invalid_argument("interval must have positive length: [" + lo_.str() + ", " +
                                hi_.str() + "]");
  }
}

Piece normalize_piece(std::vector<Interval> raw) { return Piece(std::move(raw)); }

Piece::Piece(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  for (auto& iv : raw) {
    if (!intervals_.empty() && iv.lo() <= intervals_.back().hi()) {
      if (intervals_.back().hi() < iv.hi()) {
        intervals_.back() = Interval(intervals_.back().lo(), iv.hi());
      }
    } else {
      intervals_.push_back(std::move(iv));
    }
  }
}

const Rational& Piece::inf() const {
  if (intervals_.empty()) throw std::logic_error("infimum of an empty piece");
  return intervals_.front().lo();
}

Rational measure(const Piece& p) {
  Rational total;
  for (const auto& iv : p.intervals()) total += iv.length();
  return total;
}

Piece piece_union(std::span<const Piece> pieces) {
  std::vector<Interval> all;
  for (const auto& p : pieces) all.insert(all.end(), p.intervals().begin(), p.intervals().end());
  return Piece(std::move(all));
}

Rational overlap_measure(const Piece& p, const Rational& lo, const Rational& hi) {
  Rational total;
  for (const auto& iv : p.intervals()) {
    const Rational& a = max(iv.lo(), lo);
    const Rational& b = min(iv.hi(), hi);
    if (a < b) total += b - a;
  }
  return total;
}

Valuation::Valuation(std::vector<Rational> breakpoints, std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != kZero || breakpoints_.back() != kOne) {
    throw std::invalid_argument("valuation breakpoints must start at 0 and end at 1");
  }
  if (densities_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("valuation needs exactly one density per segment");
  }
  cumulative_.reserve(breakpoints_.size());
  cumulative_.emplace_back(0);
  for (std::size_t k = 0; k < densities_.size(); ++k) {
    if (!(breakpoints_[k] < breakpoints_[k + 1])) {
      throw std::invalid_argument("valuation breakpoints must be strictly increasing");
    }
    if (densities_[k].sign() < 0) throw std::invalid_argument("negative density");
    cumulative_.push_back(cumulative_.back() +
                          densities_[k] * (breakpoints_[k + 1] - breakpoints_[k]));
  }
  if (cumulative_.back() != kOne) {
    throw std::invalid_argument("valuation must integrate to 1, got " + cumulative_.back().str());
  }
}

Valuation Valuation::uniform() { return Valuation({Rational(0), Rational(1)}, {Rational(1)}); }

std::size_t Valuation::segment_of(const Rational& t) const {
  // Last segment k with t_k <= t, clamped so t = 1 falls in the final segment.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
  return std::min(k == 0 ? 0 : k - 1, densities_.size() - 1);
}

Rational Valuation::cdf(const Rational& t) const {
  require_unit(t, "cake coordinate");
  const std::size_t k = segment_of(t);
  return cumulative_[k] + densities_[k] * (t - breakpoints_[k]);
}

const Rational& Valuation::density_at(const Rational& t) const {
  require_unit(t, "cake coordinate");
  return densities_[segment_of(t)];
}

Rational value(const Valuation& v, const Piece& p) {
  Rational total;
  for (const auto& iv : p.intervals()) total += v.cdf(iv.hi()) - v.cdf(iv.lo());
  return total;
}

Rational eval(const Valuation& v, const Rational& x, const Rational& y) {
  require_unit(x, "eval x");
  require_unit(y, "eval y");
  if (y < x) throw std::invalid_argument("eval requires x <= y");
  return v.cdf(y) - v.cdf(x);
}

std::optional<Rational> cut(const Valuation& v, const Rational& x, const Rational& alpha) {
  require_unit(x, "cut x");
  require_unit(alpha, "cut alpha");
  if (alpha.is_zero()) return x;
  const Rational target = v.cdf(x) + alpha;
  if (target > kOne) return std::nullopt;

  // Walk forward from x; the first segment with positive density that reaches
  // the target holds the unique minimal solution.
  const auto bps = v.breakpoints();
  const auto dens = v.densities();
  Rational position = x;
  Rational reached = v.cdf(x);
  for (std::size_t k = 0; k < dens.size(); ++k) {
    if (bps[k + 1] <= position) continue;
    if (dens[k].is_zero()) {
      position = bps[k + 1];
      continue;
    }
    const Rational segment_value = dens[k] * (bps[k + 1] - position);
    if (reached + segment_value >= target) return position + (target - reached) / dens[k];
    reached += segment_value;
    position = bps[k + 1];
  }
  throw std::logic_error("cut: cumulative value inconsistent with total");
}

std::optional<Interval> divide(const Valuation& v, const Interval& interval, const Rational& lambda) {
  require_unit(lambda, "divide lambda");
  const Rational share = lambda * eval(v, interval.lo(), interval.hi());
  if (share.is_zero()) return std::nullopt;
  const auto end = cut(v, interval.lo(), share);
  return Interval(interval.lo(), *end);
}

}  // namespace rwlab
