#include "doctest.h"

#include <random>

#include "rwlab/adversary.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/query.hpp"
#include "support.hpp"

using namespace rwlab;
using rwlab::testing::q;

TEST_CASE("oracle_answer delegates to eval and cut") {
  const auto uniform = uniform_profile(3);
  CHECK(oracle_answer(uniform, Query::eval(1, q(0), q(1, 2))) == q(1, 2));
  CHECK(oracle_answer(uniform, Query::cut(1, q(1, 4), q(1, 4))) == q(1, 2));
  CHECK_FALSE(oracle_answer(uniform, Query::cut(1, q(3, 4), q(1, 2))).has_value());
  CHECK_THROWS_AS(oracle_answer(uniform, Query::eval(3, q(0), q(1))), std::invalid_argument);
  CHECK_THROWS_AS(oracle_answer(uniform, Query::eval(0, q(1, 2), q(0))), std::invalid_argument);
}

TEST_CASE("counting wrapper counts and records") {
  ValuationOracle inner(uniform_profile(2));
  CountingOracle counter(inner);
  CHECK(counter.total() == 0);
  CHECK(counter.transcript().empty());

  counter.eval(0, q(0), q(1, 3));
  counter.eval(1, q(0), q(1, 3));
  counter.eval(1, q(1, 3), q(1));
  counter.cut(0, q(0), q(1, 2));
  counter.cut(1, q(1, 2), q(3, 4));
  CHECK(counter.total() == 5);
  CHECK(counter.transcript().size() == 5);
  CHECK(counter.count_for(0) == 2);
  CHECK(counter.count_for(1) == 3);
  CHECK_FALSE(counter.transcript().entries.back().response.has_value());
}

TEST_CASE("queried points follow eval x,y and cut x plus answer, never alpha") {
  ValuationOracle inner(uniform_profile(1));
  CountingOracle counter(inner);
  counter.eval(0, q(1, 4), q(3, 4));
  counter.cut(0, q(0), q(1, 8));
  // Traced by hand: {1/4, 3/4} from the eval, {0} from the cut x, {1/8}
  // from its answer; alpha = 1/8 coincides with the answer here.
  CHECK(counter.queried_points().points(0) == std::set<Rational>{q(0), q(1, 8), q(1, 4), q(3, 4)});

  CountingOracle second(inner);
  second.cut(0, q(1, 2), q(1, 5));
  CHECK(second.queried_points().points(0) == std::set<Rational>{q(1, 2), q(7, 10)});

  // A failed cut contributes only x.
  CountingOracle third(inner);
  third.cut(0, q(9, 10), q(1, 2));
  CHECK(third.queried_points().points(0) == std::set<Rational>{q(9, 10)});
  CHECK(QueriedPointSet::from_transcript(third.transcript(), 1) == third.queried_points());
}

TEST_CASE("budget stops the query that would exceed it") {
  UniformOracle inner(2);
  CountingOracle counter(inner, 2);
  counter.eval(0, q(0), q(1));
  counter.eval(1, q(0), q(1));
  CHECK_THROWS_AS(counter.eval(0, q(0), q(1, 2)), BudgetExhausted);
  CHECK(counter.total() == 2);
}

TEST_CASE("is_consistent") {
  const auto uniform = uniform_profile(1);
  ValuationOracle inner(uniform);
  CountingOracle counter(inner);
  counter.eval(0, q(0), q(1, 2));
  CHECK(is_consistent(counter.transcript(), uniform));
  CHECK(is_consistent(Transcript{}, worked_example_profile()));

  // Density 2 on [0,1/4], 0 on [1/4,1/2], 1 on [1/2,1]: still 1/2 on [0,1/2].
  const std::vector<Valuation> candidate{
      Valuation({q(0), q(1, 4), q(1, 2), q(1)}, {q(2), q(0), q(1)})};
  CHECK(is_consistent(counter.transcript(), candidate));

  counter.eval(0, q(0), q(1, 4));
  CHECK_FALSE(is_consistent(counter.transcript(), candidate));
}

TEST_CASE("cut entries accept any feasible answer, not only the minimal one") {
  // Recorded from a uniform agent: cut(0, 1/4) = 1/4.
  Transcript t;
  t.entries.push_back({Query::cut(0, q(0), q(1, 4)), q(1, 4)});
  // Candidate has density 0 on [1/8,1/4]: minimal cut is 1/8, but 1/4 is
  // also a valid answer.
  const std::vector<Valuation> plateau{
      Valuation({q(0), q(1, 8), q(1, 4), q(1)}, {q(2), q(0), q(1)})};
  REQUIRE(cut(plateau[0], q(0), q(1, 4)) == q(1, 8));
  CHECK(is_consistent(t, plateau));

  Transcript none;
  none.entries.push_back({Query::cut(0, q(1, 2), q(3, 4)), std::nullopt});
  CHECK(is_consistent(none, uniform_profile(1)));
  none.entries.front() = {Query::cut(0, q(1, 2), q(1, 2)), std::nullopt};
  CHECK_FALSE(is_consistent(none, uniform_profile(1)));
}

TEST_CASE("protocol properties on random query sequences") {
  std::mt19937_64 rng(77);
  const long grid = 32;
  for (int trial = 0; trial < 200; ++trial) {
    const auto profile = random_profile(rng, 3, 4, 16);
    ValuationOracle inner(profile);
    CountingOracle first(inner), second(inner);
    std::uniform_int_distribution<AgentId> who(0, 2);
    std::bernoulli_distribution is_eval(0.5);
    std::vector<std::size_t> per_agent(3, 0);
    for (int k = 0; k < 12; ++k) {
      const AgentId i = who(rng);
      Rational a = rwlab::testing::random_grid_point(rng, grid);
      Rational b = rwlab::testing::random_grid_point(rng, grid);
      if (is_eval(rng)) {
        if (b < a) std::swap(a, b);
        first.eval(i, a, b);
        second.eval(i, a, b);
      } else {
        first.cut(i, a, b);
        second.cut(i, a, b);
      }
      ++per_agent[i];
    }
    CHECK(first.transcript() == second.transcript());
    CHECK(is_consistent(first.transcript(), profile));
    for (AgentId i = 0; i < 3; ++i) {
      CHECK(first.queried_points().points(i).size() <= 2 * per_agent[i]);
    }
  }
}
