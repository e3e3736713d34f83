#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include <gmpxx.h>

#include "rwlab/adversary.hpp"
#include "rwlab/algorithms.hpp"
#include "rwlab/analysis.hpp"
#include "rwlab/generators.hpp"
#include "support.hpp"

using namespace rwlab;
using rwlab::testing::piece;
using rwlab::testing::q;

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class double_factorial(unsigned long k) {
  mpz_class r(1);
  for (unsigned long t = k; t > 1; t -= 2) r *= t;
  return r;
}

// Closed-form count of half-size subsets of 16 vertices (8 fixed pairs) with
// exactly h hit pairs: choose the h hit pairs, which 8-h of them are full,
// and one vertex from each of the remaining 2h-8 half-hit pairs.
mpz_class subsets_with_hits(unsigned long h) {
  if (h < 4 || h > 8) return 0;
  mpz_class c = binomial(8, h) * binomial(h, 8 - h);
  mpz_class two(1);
  for (unsigned long k = 0; k < 2 * h - 8; ++k) two *= 2;
  return c * two;
}

Rational closed_form_tail(unsigned long threshold) {
  mpz_class favourable = 0;
  for (unsigned long h = 0; h <= threshold; ++h) favourable += subsets_with_hits(h);
  return Rational(mpq_class(favourable, binomial(16, 8)));
}

// Independent reimplementation: count split pairs by scanning S_i as a
// boolean vector over vertex ids.
bool naive_segments(const PairPartition& p, const std::vector<AgentId>& s, std::size_t n) {
  std::vector<bool> in(n, false);
  for (AgentId v : s) in[v] = true;
  int splits = 0;
  for (const auto& pr : p.pairs) splits += in[pr.first] ^ in[pr.second] ? 1 : 0;
  return splits * 4 <= static_cast<int>(p.pairs.size());
}

std::vector<AgentId> iota_ids(std::size_t n, AgentId from = 0) {
  std::vector<AgentId> ids(n);
  std::iota(ids.begin(), ids.end(), from);
  return ids;
}

PairPartition consecutive_pairs(AgentId from, std::size_t count) {
  PairPartition p;
  for (std::size_t j = 0; j < count; ++j) p.pairs.emplace_back(from + 2 * j, from + 2 * j + 1);
  return p;
}

}  // namespace

TEST_CASE("segmentation threshold at m = 32") {
  const PairPartition p = consecutive_pairs(16, 8);
  // Pairs 0..3 fully inside: zero splits.
  CHECK(is_segmentation_for(p, std::vector<AgentId>{16, 17, 18, 19, 20, 21, 22, 23}));
  // Three full pairs plus one vertex from each of pairs 4 and 5: 2 splits,
  // exactly the allowed quarter of 8.
  const std::vector<AgentId> two_splits{16, 17, 18, 19, 20, 21, 24, 26};
  CHECK(split_count(p, two_splits) == 2);
  CHECK(is_segmentation_for(p, two_splits));
  // With |S_i| = 8 the split count is even, so the next case is 4 splits.
  const std::vector<AgentId> four_splits{16, 17, 18, 19, 20, 22, 24, 26};
  CHECK(split_count(p, four_splits) == 4);
  CHECK_FALSE(is_segmentation_for(p, four_splits));
  // Three splits needs an odd-sized set; the counter does not care.
  const std::vector<AgentId> three_splits{16, 17, 18, 19, 20, 22, 24};
  CHECK(split_count(p, three_splits) == 3);
  CHECK_FALSE(is_segmentation_for(p, three_splits));
}

TEST_CASE("segmentation of a set") {
  const auto inst = build_instance(33, 17);
  const PairPartition p = consecutive_pairs(16, 8);
  CHECK(is_segmentation_for_set(p, std::vector<AgentId>{}, inst));
  for (AgentId i : inst.left()) {
    CHECK(is_segmentation_for_set(p, std::vector<AgentId>{i}, inst) ==
          is_segmentation_for(p, inst.neighborhood(i)));
  }
  CHECK_THROWS_AS(is_segmentation_for_set(p, std::vector<AgentId>{20}, inst), std::invalid_argument);

  // Dual-implementation oracle over random partitions and random M of size 8.
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto candidate = build_instance(33, static_cast<std::uint64_t>(t));
    std::vector<AgentId> r = iota_ids(16, 16);
    std::shuffle(r.begin(), r.end(), rng);
    PairPartition rp;
    for (std::size_t k = 0; k < 16; k += 2) rp.pairs.emplace_back(r[k], r[k + 1]);
    std::vector<AgentId> m = iota_ids(16);
    std::shuffle(m.begin(), m.end(), rng);
    m.resize(8);
    bool naive = true;
    for (AgentId i : m) {
      const auto s = candidate.neighborhood(i);
      naive = naive && naive_segments(rp, std::vector<AgentId>(s.begin(), s.end()), 33);
    }
    CHECK(is_segmentation_for_set(rp, m, candidate) == naive);
  }
}

TEST_CASE("canonical segmentation orders R by first interval") {
  const auto inst = build_instance(33, 1);
  CHECK(canonical_segmentation(contiguous_allocation(iota_ids(33)), inst) == consecutive_pairs(16, 8));

  std::vector<AgentId> reversed = iota_ids(33);
  std::reverse(reversed.begin(), reversed.end());
  const auto rev = canonical_segmentation(contiguous_allocation(reversed), inst);
  CHECK(rev.pairs.front() == std::pair<AgentId, AgentId>{31, 30});
  CHECK(rev.pairs.back() == std::pair<AgentId, AgentId>{17, 16});

  // Four R agents 16..19 hold two cells each on a 66-cell grid. First cells
  // run 16,17,18,19 left to right while second cells run 19,18,17,16, so
  // any pairing that looked past the first cell would differ.
  std::vector<std::vector<Interval>> cells(33);
  auto cell = [](long k) { return Interval(Rational(k, 66), Rational(k + 1, 66)); };
  long next = 0;
  for (AgentId r : {16u, 17u, 18u, 19u}) cells[r].push_back(cell(next++));
  for (AgentId r : {19u, 18u, 17u, 16u}) cells[r].push_back(cell(next++));
  for (AgentId v = 0; v < 33; ++v) {
    while (cells[v].size() < 2) cells[v].push_back(cell(next++));
  }
  std::vector<Piece> pieces;
  for (auto& c : cells) pieces.emplace_back(std::move(c));
  const Allocation interleaved(pieces);
  const auto p = canonical_segmentation(interleaved, inst);
  CHECK(p.pairs[0] == std::pair<AgentId, AgentId>{16, 17});
  CHECK(p.pairs[1] == std::pair<AgentId, AgentId>{18, 19});
}

TEST_CASE("boundary-to-segmentation implication") {
  const auto inst = build_instance(33, 21);
  const auto a = contiguous_allocation(iota_ids(33));
  CHECK_FALSE(check_boundary_segmentation(a, inst, std::vector<AgentId>{}).counterexample());

  // Place agent 0's neighbors contiguously: b_0 = 2 and zero splits.
  std::vector<AgentId> order = iota_ids(16);
  for (AgentId r : inst.neighborhood(0)) order.push_back(r);
  for (AgentId r : inst.right()) {
    if (!std::binary_search(inst.neighborhood(0).begin(), inst.neighborhood(0).end(), r)) {
      order.push_back(r);
    }
  }
  order.push_back(32);
  const auto grouped = contiguous_allocation(order);
  const auto report = check_boundary_segmentation(grouped, inst, std::vector<AgentId>{0});
  CHECK(report.premise);
  CHECK(report.conclusion);
  CHECK(report.entries[0].boundary_count == 2);
  CHECK(report.entries[0].split_count == 0);

  std::mt19937_64 rng(1234);
  for (int t = 0; t < 300; ++t) {
    const auto random_inst = build_instance(33, static_cast<std::uint64_t>(1000 + t));
    const auto alloc = random_equal_allocation(rng, 33, 1 + static_cast<std::size_t>(t % 3));
    const auto all = iota_ids(16);
    const auto r = check_boundary_segmentation(alloc, random_inst, all);
    CHECK_FALSE(r.counterexample());
    for (const auto& e : r.entries) CHECK(e.split_count <= e.boundary_count);
  }
}

TEST_CASE("hoeffding tail values") {
  CHECK(hoeffding_tail_bound(128) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(hoeffding_tail_bound(32) == doctest::Approx(0.7788007830714049).epsilon(1e-12));
  CHECK(hoeffding_tail_bound(0) == 1.0);
  CHECK(split_tail_threshold(32) == 5);
  CHECK(split_tail_threshold(128) == 20);
}

TEST_CASE("exact tail by enumeration agrees with the closed-form count") {
  const Rational tail = exact_split_tail(32);
  CHECK(tail == closed_form_tail(5));
  CHECK(tail == Rational(2310, 12870));
  CHECK(tail.to_double() <= std::exp(-0.25));
  CHECK(exact_split_tail(32, 8) == q(1));
  CHECK(exact_split_tail(32, 0) == q(0));
  CHECK(exact_split_tail(32, 0) == closed_form_tail(0));
  for (unsigned long t = 0; t <= 8; ++t) CHECK(exact_split_tail(32, t) == closed_form_tail(t));
  CHECK(exact_split_tail(32, std::nullopt, HitKind::NonAdjacent) == tail);
  CHECK_THROWS_AS(exact_split_tail(64), std::invalid_argument);
}

TEST_CASE("per-pair hit probability is 23/30") {
  const Rational p = exact_pair_hit_probability(32);
  CHECK(p == q(23, 30));
  CHECK(p == q(1) - Rational(mpq_class(binomial(14, 8), binomial(16, 8))));
  CHECK(p >= q(3, 4));
}

TEST_CASE("monte carlo tail") {
  const auto est = monte_carlo_split_tail(32, 20000, 7);
  const double exact = exact_split_tail(32).to_double();
  CHECK(est.lower() <= exact);
  CHECK(exact <= est.upper());
  CHECK(est.trials == 20000);
  CHECK(monte_carlo_split_tail(32, 5000, 3).hits == monte_carlo_split_tail(32, 5000, 3).hits);
  CHECK_THROWS_AS(monte_carlo_split_tail(32, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_split_tail(40, 10, 1), std::invalid_argument);
}

TEST_CASE("union bound components match exact integers") {
  const auto t32 = union_bound_log(32);
  CHECK(std::exp(t32.ln_binomial) == doctest::Approx(12870.0).epsilon(1e-9));
  CHECK(std::exp(t32.ln_double_factorial) == doctest::Approx(2027025.0).epsilon(1e-9));
  CHECK(t32.ln_pow2_term == doctest::Approx(8 * std::log(2.0)));
  CHECK(t32.exp_term == -2.0);
  CHECK(t32.total_log == doctest::Approx(std::log(12870.0) + std::log(2027025.0) + 8 * std::log(2.0) - 2));
  CHECK(t32.total_log > 0);

  const auto t64 = union_bound_log(64);
  CHECK(binomial(32, 16) == 601080390);
  CHECK(double_factorial(31) == mpz_class("191898783962510625"));
  CHECK(t64.ln_binomial == doctest::Approx(std::log(binomial(32, 16).get_d())).epsilon(1e-12));
  CHECK(t64.ln_double_factorial ==
        doctest::Approx(std::log(double_factorial(31).get_d())).epsilon(1e-12));
}

TEST_CASE("union bound scan crosses zero once and then decreases") {
  const auto scan = union_bound_scan(32, 32768);
  CHECK(scan.size() == 1024);
  const auto crossing = union_bound_crossing(scan);
  REQUIRE(crossing);
  int sign_changes = 0;
  for (std::size_t k = 1; k < scan.size(); ++k) {
    if ((scan[k - 1].total_log < 0) != (scan[k].total_log < 0)) ++sign_changes;
    if (scan[k - 1].m >= *crossing) CHECK(scan[k].total_log < scan[k - 1].total_log);
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("pair partition count") {
  CHECK(count_pair_partitions(2) == 1);
  CHECK(count_pair_partitions(4) == 3);
  CHECK(count_pair_partitions(6) == 15);
  CHECK(count_pair_partitions(16) == 2027025);
  CHECK(double_factorial(15) == 2027025);

  std::vector<AgentId> ground{3, 5, 7, 9};
  for_each_pair_partition(ground, [&](const PairPartition& p) { CHECK_NOTHROW(p.validate(ground)); });
}
