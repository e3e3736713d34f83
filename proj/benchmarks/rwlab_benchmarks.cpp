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

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "rwlab/adversary.hpp"
#include "rwlab/algorithms.hpp"
#include "rwlab/analysis.hpp"
#include "rwlab/generators.hpp"

namespace {

using namespace rwlab;

void BM_EvenPaz(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  UniformOracle uniform(n);
  std::size_t queries = 0;
  for (auto _ : state) {
    queries = even_paz(uniform).query_count;
    benchmark::DoNotOptimize(queries);
  }
  state.counters["queries"] = static_cast<double>(queries);
}
BENCHMARK(BM_EvenPaz)->RangeMultiplier(4)->Range(4, 1024)->Unit(benchmark::kMillisecond);

void BM_LastDiminisher(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  UniformOracle uniform(n);
  std::size_t queries = 0;
  for (auto _ : state) {
    queries = last_diminisher(uniform).query_count;
    benchmark::DoNotOptimize(queries);
  }
  state.counters["queries"] = static_cast<double>(queries);
}
BENCHMARK(BM_LastDiminisher)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMillisecond);

void BM_EvalKernel(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto v = random_valuation(rng, static_cast<std::size_t>(state.range(0)), 1 << 12);
  const Rational x(1, 7), y(5, 6);
  for (auto _ : state) benchmark::DoNotOptimize(eval(v, x, y));
}
BENCHMARK(BM_EvalKernel)->Arg(4)->Arg(64)->Arg(1024);

void BM_CutKernel(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto v = random_valuation(rng, static_cast<std::size_t>(state.range(0)), 1 << 12);
  const Rational x(1, 7);
  const Rational alpha = eval(v, x, Rational(1)) / Rational(3);
  for (auto _ : state) benchmark::DoNotOptimize(cut(v, x, alpha));
}
BENCHMARK(BM_CutKernel)->Arg(4)->Arg(64)->Arg(1024);

void BM_BuildInstance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_instance(n, seed++));
}
BENCHMARK(BM_BuildInstance)->Arg(33)->Arg(129)->Arg(1025);

void BM_AttackZeroQuery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = build_instance(n, 3);
  std::vector<AgentId> ids(n);
  std::iota(ids.begin(), ids.end(), AgentId{0});
  const auto a = contiguous_allocation(ids);
  const Transcript empty;
  const QueriedPointSet none(n);
  for (auto _ : state) benchmark::DoNotOptimize(attack(a, empty, none, inst).refuted());
}
BENCHMARK(BM_AttackZeroQuery)->Arg(33)->Arg(129)->Arg(513)->Unit(benchmark::kMillisecond);

void BM_ExactSplitTail(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exact_split_tail(32));
}
BENCHMARK(BM_ExactSplitTail)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
