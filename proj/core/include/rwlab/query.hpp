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

#ifndef RWLAB_QUERY_HPP
#define RWLAB_QUERY_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rwlab/cake.hpp"
#include "rwlab/rational.hpp"

namespace rwlab {

using AgentId = std::size_t;

struct EvalQuery {
  Rational x;
  Rational y;
  friend bool operator==(const EvalQuery&, const EvalQuery&) = default;
};

struct CutQuery {
  Rational x;
  Rational alpha;
  friend bool operator==(const CutQuery&, const CutQuery&) = default;
};

/// A single Robertson-Webb query addressed to one agent.
struct Query {
  AgentId agent{};
  std::variant<EvalQuery, CutQuery> kind;

  static Query eval(AgentId agent, Rational x, Rational y);
  static Query cut(AgentId agent, Rational x, Rational alpha);

  bool is_eval() const { return std::holds_alternative<EvalQuery>(kind); }
  friend bool operator==(const Query&, const Query&) = default;
};

/// Value for eval, cut point for cut; nullopt records a cut with no answer.
using Response = std::optional<Rational>;

struct TranscriptEntry {
  Query query;
  Response response;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Q_i for every agent: points an agent's valuation was probed at. Eval
/// contributes x and y, cut contributes x and its answer; alpha never enters.
class QueriedPointSet {
 public:
  explicit QueriedPointSet(std::size_t agents = 0) : points_(agents) {}

  static QueriedPointSet from_transcript(const Transcript& t, std::size_t agents);

  void record(const TranscriptEntry& entry);

  const std::set<Rational>& points(AgentId agent) const { return points_.at(agent); }
  std::size_t agent_count() const { return points_.size(); }

  friend bool operator==(const QueriedPointSet&, const QueriedPointSet&) = default;

 private:
  std::vector<std::set<Rational>> points_;
};

/// The oracle boundary algorithms talk through.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual std::size_t agent_count() const = 0;
  virtual Response answer(const Query& q) = 0;

  Rational eval(AgentId agent, const Rational& x, const Rational& y);
  std::optional<Rational> cut(AgentId agent, const Rational& x, const Rational& alpha);
};

/// Answers every query from an explicit valuation profile.
class ValuationOracle final : public Oracle {
 public:
  explicit ValuationOracle(std::vector<Valuation> valuations);

  std::size_t agent_count() const override { return valuations_.size(); }
  Response answer(const Query& q) override;

  std::span<const Valuation> valuations() const { return valuations_; }

 private:
  std::vector<Valuation> valuations_;
};

Response oracle_answer(std::span<const Valuation> valuations, const Query& q);

/// Thrown by CountingOracle when a query would exceed its budget. The query
/// is not forwarded and not recorded.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::size_t budget);
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

/// Forwards queries to an inner oracle while counting them, recording the
/// transcript, and maintaining the queried point sets.
class CountingOracle final : public Oracle {
 public:
  explicit CountingOracle(Oracle& inner, std::optional<std::size_t> budget = std::nullopt);

  std::size_t agent_count() const override { return inner_->agent_count(); }
  Response answer(const Query& q) override;

  std::size_t total() const { return transcript_.size(); }
  std::size_t count_for(AgentId agent) const { return per_agent_.at(agent); }
  std::optional<std::size_t> budget() const { return budget_; }

  const Transcript& transcript() const { return transcript_; }
  const QueriedPointSet& queried_points() const { return points_; }
  Transcript take_transcript() { return std::move(transcript_); }

 private:
  Oracle* inner_;
  std::optional<std::size_t> budget_;
  std::vector<std::size_t> per_agent_;
  Transcript transcript_;
  QueriedPointSet points_;
};

/// True iff every recorded response is a valid answer under `candidate`.
/// A recorded cut point only needs to be *a* solution, not the minimal one.
bool is_consistent(const Transcript& t, std::span<const Valuation> candidate);

}  // namespace rwlab

#endif  // RWLAB_QUERY_HPP
