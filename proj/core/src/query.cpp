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

#include "rwlab/query.hpp"

#include <string>
#include <utility>

namespace rwlab {

namespace {

void validate(const Query& q, std::size_t agents) {
  if (q.agent >= agents) {
    throw std::invalid_argument("query names unknown agent " + std::to_string(q.agent));
  }
  const Rational zero(0), one(1);
  auto in_unit = [&](const Rational& r) { return zero <= r && r <= one; };
  if (const auto* e = std::get_if<EvalQuery>(&q.kind)) {
    if (!in_unit(e->x) || !in_unit(e->y) || e->y < e->x) {
      throw std::invalid_argument("eval query needs 0 <= x <= y <= 1");
    }
  } else {
    const auto& c = std::get<CutQuery>(q.kind);
    if (!in_unit(c.x) || !in_unit(c.alpha)) {
      throw std::invalid_argument("cut query needs x, alpha in [0,1]");
    }
  }
}

}  // namespace

Query Query::eval(AgentId agent, Rational x, Rational y) {
  return Query{agent, EvalQuery{std::move(x), std::move(y)}};
}

Query Query::cut(AgentId agent, Rational x, Rational alpha) {
  return Query{agent, CutQuery{std::move(x), std::move(alpha)}};
}

QueriedPointSet QueriedPointSet::from_transcript(const Transcript& t, std::size_t agents) {
  QueriedPointSet q(agents);
  for (const auto& entry : t.entries) q.record(entry);
  return q;
}

void QueriedPointSet::record(const TranscriptEntry& entry) {
  auto& pts = points_.at(entry.query.agent);
  if (const auto* e = std::get_if<EvalQuery>(&entry.query.kind)) {
    pts.insert(e->x);
    pts.insert(e->y);
  } else {
    pts.insert(std::get<CutQuery>(entry.query.kind).x);
    if (entry.response) pts.insert(*entry.response);
  }
}

Rational Oracle::eval(AgentId agent, const Rational& x, const Rational& y) {
  return *answer(Query::eval(agent, x, y));
}

std::optional<Rational> Oracle::cut(AgentId agent, const Rational& x, const Rational& alpha) {
  return answer(Query::cut(agent, x, alpha));
}

Response oracle_answer(std::span<const Valuation> valuations, const Query& q) {
  validate(q, valuations.size());
  const Valuation& v = valuations[q.agent];
  if (const auto* e = std::get_if<EvalQuery>(&q.kind)) return rwlab::eval(v, e->x, e->y);
  const auto& c = std::get<CutQuery>(q.kind);
  return rwlab::cut(v, c.x, c.alpha);
}

ValuationOracle::ValuationOracle(std::vector<Valuation> valuations)
    : valuations_(std::move(valuations)) {}

Response ValuationOracle::answer(const Query& q) { return oracle_answer(valuations_, q); }

BudgetExhausted::BudgetExhausted(std::size_t budget)
    : std::runtime_error("query budget of " + std::to_string(budget) + " exhausted"),
      budget_(budget) {}

CountingOracle::CountingOracle(Oracle& inner, std::optional<std::size_t> budget)
    : inner_(&inner),
      budget_(budget),
      per_agent_(inner.agent_count(), 0),
      points_(inner.agent_count()) {}

Response CountingOracle::answer(const Query& q) {
  if (budget_ && transcript_.size() >= *budget_) throw BudgetExhausted(*budget_);
  Response r = inner_->answer(q);
  ++per_agent_.at(q.agent);
  transcript_.entries.push_back(TranscriptEntry{q, r});
  points_.record(transcript_.entries.back());
  return r;
}

bool is_consistent(const Transcript& t, std::span<const Valuation> candidate) {
  for (const auto& entry : t.entries) {
    if (entry.query.agent >= candidate.size()) return false;
    const Valuation& v = candidate[entry.query.agent];
    if (const auto* e = std::get_if<EvalQuery>(&entry.query.kind)) {
      if (!entry.response || rwlab::eval(v, e->x, e->y) != *entry.response) return false;
      continue;
    }
    const auto& c = std::get<CutQuery>(entry.query.kind);
    if (!entry.response) {
      if (!(rwlab::eval(v, c.x, Rational(1)) < c.alpha)) return false;
      continue;
    }
    const Rational& y = *entry.response;
    if (y < c.x || y > Rational(1) || rwlab::eval(v, c.x, y) != c.alpha) return false;
  }
  return true;
}

}  // namespace rwlab
