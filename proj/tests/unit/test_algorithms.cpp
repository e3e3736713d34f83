#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "rwlab/adversary.hpp"
#include "rwlab/algorithms.hpp"
#include "rwlab/generators.hpp"
#include "support.hpp"

using namespace rwlab;
using rwlab::testing::piece;
using rwlab::testing::q;

namespace {

// q(n) = n + q(ceil(n/2)) + q(floor(n/2)), q(1) = 0.
std::size_t even_paz_recurrence(std::size_t n) {
  if (n <= 1) return 0;
  return n + even_paz_recurrence((n + 1) / 2) + even_paz_recurrence(n / 2);
}

}  // namespace

TEST_CASE("cut and choose") {
  ValuationOracle uniform(uniform_profile(2));
  const auto r = cut_and_choose(uniform);
  CHECK(measure(r.allocation[0]) == q(1, 2));
  CHECK(measure(r.allocation[1]) == q(1, 2));
  CHECK(r.query_count <= 2);
  CHECK(r.query_count == r.transcript.size());

  // Agent 0 (density 4 on [0,1/4]) halves at 1/8; the uniform chooser values
  // [0,1/8] at 1/8 and takes [1/8,1].
  const auto fig = worked_example_profile();
  ValuationOracle two({fig[0], fig[1]});
  const auto c = cut_and_choose(two);
  CHECK(c.allocation[0] == piece({{q(0), q(1, 8)}}));
  CHECK(c.allocation[1] == piece({{q(1, 8), q(1)}}));
  const std::vector<Valuation> pair{fig[0], fig[1]};
  CHECK(is_envy_free(c.allocation, pair).holds);

  ValuationOracle three(uniform_profile(3));
  CHECK_THROWS_AS(cut_and_choose(three), std::invalid_argument);
}

TEST_CASE("cut and choose with identical valuations gives each exactly half") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Valuation v = random_valuation(rng);
    const std::vector<Valuation> twins{v, v};
    ValuationOracle oracle(twins);
    const auto r = cut_and_choose(oracle);
    CHECK(value(v, r.allocation[0]) == q(1, 2));
    CHECK(value(v, r.allocation[1]) == q(1, 2));
  }
}

TEST_CASE("even-paz small cases") {
  ValuationOracle one(uniform_profile(1));
  const auto r1 = even_paz(one);
  CHECK(r1.allocation[0] == piece({{q(0), q(1)}}));
  CHECK(r1.query_count == 0);

  ValuationOracle two(uniform_profile(2));
  const auto r2 = even_paz(two);
  CHECK(measure(r2.allocation[0]) == q(1, 2));

  ValuationOracle four(uniform_profile(4));
  const auto r4 = even_paz(four);
  for (AgentId i = 0; i < 4; ++i) CHECK(measure(r4.allocation[i]) == q(1, 4));
  CHECK(r4.query_count == 8);
  CHECK(even_paz_recurrence(4) == 8);
  for (const auto& e : r4.transcript.entries) CHECK_FALSE(e.query.is_eval());
}

TEST_CASE("even-paz query counts follow the recurrence for uniform agents") {
  for (std::size_t n : {3u, 5u, 7u, 12u, 33u, 64u}) {
    UniformOracle oracle(n);
    CHECK(even_paz(oracle).query_count == even_paz_recurrence(n));
  }
}

TEST_CASE("even-paz is proportional on random instances") {
  std::mt19937_64 rng(321);
  std::uniform_int_distribution<std::size_t> size(2, 16);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = size(rng);
    const auto v = random_profile(rng, n);
    ValuationOracle oracle(v);
    const auto r = even_paz(oracle);
    CHECK(is_proportional(r.allocation, v).holds);
  }
}

TEST_CASE("last diminisher") {
  ValuationOracle one(uniform_profile(1));
  CHECK(last_diminisher(one).query_count == 0);

  ValuationOracle three(uniform_profile(3));
  const auto r = last_diminisher(three);
  for (AgentId i = 0; i < 3; ++i) CHECK(measure(r.allocation[i]) == q(1, 3));
  CHECK(r.query_count == 5);

  const auto fig = worked_example_profile();
  ValuationOracle example(fig);
  CHECK(is_proportional(last_diminisher(example).allocation, fig).holds);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto v = random_profile(rng, 6);
    ValuationOracle oracle(v);
    const auto res = last_diminisher(oracle);
    CHECK(is_proportional(res.allocation, v).holds);
    CHECK(res.query_count == 6 * 7 / 2 - 1);
  }
}

TEST_CASE("contiguous equal split") {
  const std::vector<AgentId> identity{0, 1, 2};
  const auto r = contiguous_equal_split(identity);
  CHECK(r.allocation[0] == piece({{q(0), q(1, 3)}}));
  CHECK(r.allocation[1] == piece({{q(1, 3), q(2, 3)}}));
  CHECK(r.allocation[2] == piece({{q(2, 3), q(1)}}));
  CHECK(r.query_count == 0);

  const std::vector<AgentId> swapped{1, 0};
  CHECK(contiguous_equal_split(swapped).allocation[1] == piece({{q(0), q(1, 2)}}));

  const std::vector<AgentId> bad{0, 0};
  CHECK_THROWS_AS(contiguous_allocation(bad), std::invalid_argument);

  const auto inst = build_instance(65, 4);
  std::vector<AgentId> order(65);
  std::iota(order.begin(), order.end(), AgentId{0});
  std::mt19937_64 rng(1);
  std::shuffle(order.begin(), order.end(), rng);
  CHECK(is_locally_proportional(contiguous_allocation(order), uniform_profile(65), inst.graph()).holds);
}

TEST_CASE("budget exhaustion falls back to a complete allocation") {
  UniformOracle oracle(4);
  const auto r = run_algorithm(even_paz_algorithm(), oracle, 1);
  CHECK(r.used_fallback);
  CHECK(r.query_count == 1);
  CHECK(r.transcript.size() == 1);
  CHECK(r.allocation == contiguous_allocation(std::vector<AgentId>{0, 1, 2, 3}));

  const auto unlimited = run_algorithm(even_paz_algorithm(), oracle, 100);
  CHECK_FALSE(unlimited.used_fallback);
}

TEST_CASE("algorithm registry") {
  for (const auto& name : algorithm_names()) CHECK(algorithm_by_name(name).name == name);
  CHECK_THROWS_AS(algorithm_by_name("selfridge-conway"), std::invalid_argument);
}
