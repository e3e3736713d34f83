#include "doctest.h"

#include <random>
#include <sstream>

#include "rwlab/adversary.hpp"
#include "rwlab/algorithms.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/io.hpp"
#include "support.hpp"

using namespace rwlab;
using rwlab::testing::piece;
using rwlab::testing::q;

TEST_CASE("valuation text form") {
  const auto fig = worked_example_profile();
  CHECK(format_valuation(fig[0]) == "0/1 4/1 1/4 0/1 1/1");
  CHECK(parse_valuation("0 4/1 1/4 0/1 1") == fig[0]);
  CHECK_THROWS_AS(parse_valuation("0 4/1 1/4 0/1"), ParseError);
  CHECK_THROWS_AS(parse_valuation("0 2 1"), ParseError);
}

TEST_CASE("piece text form") {
  const Piece p = piece({{q(1, 16), q(1, 4)}, {q(3, 4), q(1)}});
  CHECK(format_piece(p) == "1/16..1/4 3/4..1/1");
  CHECK(parse_piece("3/4..1 1/16..1/4") == p);
  CHECK(parse_piece("") == Piece{});
  CHECK_THROWS_AS(parse_piece("1/2..1/2"), ParseError);
  CHECK_THROWS_AS(parse_piece("1/2-3/4"), ParseError);
}

TEST_CASE("files round-trip") {
  std::mt19937_64 rng(6);
  const auto profile = random_profile(rng, 5);
  std::stringstream ps;
  write_profile(ps, profile);
  CHECK(read_profile(ps) == profile);

  const auto g = random_graph(rng, 7, 0.5);
  std::stringstream gs;
  write_graph(gs, g);
  CHECK(read_graph(gs) == g);

  const auto a = random_allocation(rng, 6, 3);
  std::stringstream as;
  write_allocation(as, a);
  CHECK(read_allocation(as) == a);

  UniformOracle uniform(4);
  const auto run = run_algorithm(even_paz_algorithm(), uniform);
  CountingOracle counter(uniform);
  counter.cut(1, q(9, 10), q(1, 2));
  Transcript t = run.transcript;
  t.entries.push_back(counter.transcript().entries.front());
  t.entries.push_back({Query::eval(2, q(0), q(1, 3)), q(1, 3)});
  std::stringstream ts;
  write_transcript(ts, t);
  CHECK(ts.str().find("CUT 1 9/10 1/2 -> NONE") != std::string::npos);
  CHECK(read_transcript(ts) == t);

  for (std::uint64_t seed : {0ull, 99ull}) {
    const auto inst = build_instance(97, seed);
    std::stringstream is;
    write_instance(is, inst);
    CHECK(read_instance(is) == inst);
  }
}

TEST_CASE("malformed files are rejected with line numbers") {
  std::istringstream missing("3\n0/1 1/1 1/1\n");
  CHECK_THROWS_AS(read_profile(missing), ParseError);

  std::istringstream loop("3\n1 1\n");
  try {
    read_graph(loop);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream gap("0 0/1..1/2\n1 3/4..1/1\n");
  CHECK_THROWS_AS(read_allocation(gap), InvalidAllocation);

  std::istringstream dup("0 0/1..1/2\n0 1/2..1/1\n");
  CHECK_THROWS_AS(read_allocation(dup), ParseError);

  std::istringstream bad_line("EVAL 0 0/1 1/2 = 1/2\n");
  CHECK_THROWS_AS(read_transcript(bad_line), ParseError);

  std::istringstream short_instance("20 0 20 1\nL:\nR:\nU:\n");
  CHECK_THROWS_AS(read_instance(short_instance), ParseError);
}

TEST_CASE("header width tells instance files from profiles") {
  CHECK(header_width("# comment\n65 64 1 7\nL: 0\n") == 4);
  CHECK(header_width("\n3\n0 1 1\n") == 1);
  CHECK(header_width("") == 0);
}
