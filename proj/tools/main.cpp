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

// rwlab command-line tool.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rwlab/adversary.hpp"
#include "rwlab/algorithms.hpp"
#include "rwlab/analysis.hpp"
#include "rwlab/fairness.hpp"
#include "rwlab/generators.hpp"
#include "rwlab/io.hpp"
#include "rwlab/parallel.hpp"

namespace {

using namespace rwlab;

constexpr int kExitConstruction = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitIncomplete = 4;

// Thrown by subcommands to leave with a specific exit code.
struct ExitError : std::runtime_error {
  ExitError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";

  char separator() const { return format == "tsv" ? '\t' : ','; }
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ExitError(kExitMalformed, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExitError(kExitMalformed, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw ExitError(kExitMalformed, "cannot open '" + path + "' for writing");
  body(out);
}

// An instance file holds either an adversary instance (four-field header)
// or a valuation profile (single count). Adversary agents are uniform.
struct LoadedInstance {
  std::optional<AdversaryInstance> adversary;
  std::vector<Valuation> profile;
};

LoadedInstance load_instance(const std::string& path) {
  const std::string content = slurp(path);
  std::istringstream in(content);
  LoadedInstance out;
  switch (header_width(content)) {
    case 4:
      out.adversary = read_instance(in);
      out.profile = uniform_profile(out.adversary->n());
      break;
    case 1:
      out.profile = read_profile(in);
      break;
    default:
      throw ParseError("'" + path + "' is neither an instance nor a profile file", 1);
  }
  return out;
}

template <class T, class Reader>
T load(const std::string& path, Reader reader) {
  std::istringstream in(slurp(path));
  return reader(in);
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << x;
  return ss.str();
}

template <class... Cells>
void row(std::ostream& os, char sep, const Cells&... cells) {
  bool first = true;
  ((os << (first ? "" : std::string(1, sep)) << cells, first = false), ...);
  os << '\n';
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  bool adversary = false;
  bool random = false;
  bool worked_example = false;
  std::size_t n = 0;
  std::string graph_out;
};

void cmd_generate(const Globals& g, const GenerateArgs& a) {
  Output out(g.out);
  if (a.adversary) {
    const auto inst = build_instance(a.n, g.seed);
    write_instance(out.stream(), inst);
    if (!a.graph_out.empty()) write_file(a.graph_out, [&](std::ostream& os) { write_graph(os, inst.graph()); });
    std::cerr << "n=" << inst.n() << " m=" << inst.m() << " r=" << inst.r()
              << " budget=" << query_budget(inst.n()) << " seed=" << g.seed << '\n';
    return;
  }
  if (a.worked_example) {
    if (a.n != 0 && a.n != 3) throw ExitError(kExitConstruction, "the worked example has 3 agents");
    write_profile(out.stream(), worked_example_profile());
    if (!a.graph_out.empty()) write_file(a.graph_out, [](std::ostream& os) { write_graph(os, worked_example_graph()); });
    return;
  }
  if (a.n == 0) throw ExitError(kExitConstruction, "-n must be at least 1");
  std::mt19937_64 rng(g.seed);
  const auto profile = random_profile(rng, a.n);
  write_profile(out.stream(), profile);
  const auto graph = random_graph(rng, a.n, 0.5);
  if (!a.graph_out.empty()) write_file(a.graph_out, [&](std::ostream& os) { write_graph(os, graph); });
}

struct RunArgs {
  std::string algorithm;
  std::string instance;
  std::optional<std::size_t> budget;
  std::string transcript_out;
};

void cmd_run(const Globals& g, const RunArgs& a) {
  const Algorithm alg = algorithm_by_name(a.algorithm);
  const auto loaded = load_instance(a.instance);
  std::optional<std::size_t> budget = a.budget;
  std::unique_ptr<Oracle> oracle;
  if (loaded.adversary) {
    if (!budget) budget = query_budget(loaded.adversary->n());
    oracle = std::make_unique<UniformOracle>(loaded.adversary->n());
  } else {
    oracle = std::make_unique<ValuationOracle>(loaded.profile);
  }
  std::optional<AlgorithmResult> result;
  try {
    result = run_algorithm(alg, *oracle, budget);
  } catch (const InvalidAllocation& e) {
    throw ExitError(kExitIncomplete, std::string("no complete allocation: ") + e.what());
  }
  Output out(g.out);
  write_allocation(out.stream(), result->allocation);
  if (!a.transcript_out.empty()) {
    write_file(a.transcript_out, [&](std::ostream& os) { write_transcript(os, result->transcript); });
  }
  std::cerr << "algorithm=" << alg.name << " queries=" << result->query_count;
  if (budget) std::cerr << " budget=" << *budget;
  std::cerr << " fallback=" << (result->used_fallback ? "yes" : "no") << '\n';
}

struct CheckArgs {
  std::string allocation;
  std::string instance;
  std::string graph;
};

void cmd_check(const Globals& g, const CheckArgs& a) {
  const auto loaded = load_instance(a.instance);
  const auto alloc = load<Allocation>(a.allocation, [](std::istream& is) { return read_allocation(is); });
  SocialGraph graph;
  if (!a.graph.empty()) {
    graph = load<SocialGraph>(a.graph, [](std::istream& is) { return read_graph(is); });
  } else if (loaded.adversary) {
    graph = loaded.adversary->graph();
  } else {
    graph = SocialGraph::complete(loaded.profile.size());
  }
  if (alloc.size() != loaded.profile.size() || graph.size() != loaded.profile.size()) {
    throw ParseError("allocation, instance and graph disagree on the number of agents");
  }
  const auto p = is_proportional(alloc, loaded.profile);
  const auto lp = is_locally_proportional(alloc, loaded.profile, graph);
  const auto ef = is_envy_free(alloc, loaded.profile);
  const auto lef = is_locally_envy_free(alloc, loaded.profile, graph);
  Output out(g.out);
  auto& os = out.stream();
  const char sep = g.separator();
  auto flag = [](bool b) { return b ? "true" : "false"; };
  row(os, sep, "property", "holds");
  row(os, sep, "proportional", flag(p.holds));
  row(os, sep, "locally_proportional", flag(lp.holds));
  row(os, sep, "envy_free", flag(ef.holds));
  row(os, sep, "locally_envy_free", flag(lef.holds));
  os << '\n';
  row(os, sep, "agent", "proportional_margin", "locally_proportional_margin", "envy_free_margin",
      "locally_envy_free_margin");
  for (AgentId i = 0; i < alloc.size(); ++i) {
    row(os, sep, i, p.margins[i].str(), lp.margins[i].str(), ef.margins[i].str(), lef.margins[i].str());
  }
}

struct AttackArgs {
  std::string allocation;
  std::string transcript;
  std::string instance;
};

void cmd_attack(const Globals& g, const AttackArgs& a) {
  const auto loaded = load_instance(a.instance);
  if (!loaded.adversary) throw ParseError("attack needs an adversary instance file");
  const auto& inst = *loaded.adversary;
  const auto alloc = load<Allocation>(a.allocation, [](std::istream& is) { return read_allocation(is); });
  const auto t = load<Transcript>(a.transcript, [](std::istream& is) { return read_transcript(is); });
  if (alloc.size() != inst.n()) throw ParseError("allocation and instance disagree on the number of agents");
  for (const auto& e : t.entries) {
    if (e.query.agent >= inst.n()) throw ParseError("transcript names an agent outside the instance");
  }
  const auto verdict = attack(alloc, t, QueriedPointSet::from_transcript(t, inst.n()), inst);
  Output out(g.out);
  out.stream() << verdict.record() << '\n';
}

struct ExperimentArgs {
  std::vector<std::size_t> sizes{33, 65, 97, 129};
  std::size_t trials = 100;
};

void cmd_experiment(const Globals& g, const ExperimentArgs& a) {
  for (std::size_t n : a.sizes) construction_m(n);  // rejects n < 33 before any work
  if (a.trials == 0) throw ExitError(kExitMalformed, "--trials must be positive");
  struct Cell {
    bool split = false;
    bool truncated = false;
  };
  std::vector<Cell> cells(a.sizes.size() * a.trials);
  parallel_for(cells.size(), [&](std::size_t c) {
    const std::size_t n = a.sizes[c / a.trials];
    const auto inst = build_instance(n, g.seed + c % a.trials);
    std::vector<AgentId> ids(n);
    std::iota(ids.begin(), ids.end(), AgentId{0});
    const auto split = contiguous_equal_split(ids);
    cells[c].split = attack(split.allocation, split.transcript, QueriedPointSet(n), inst).refuted();
    UniformOracle uniform(n);
    const auto r = run_algorithm(even_paz_algorithm(), uniform, query_budget(n));
    cells[c].truncated =
        attack(r.allocation, r.transcript, QueriedPointSet::from_transcript(r.transcript, n), inst).refuted();
  });
  Output out(g.out);
  auto& os = out.stream();
  const char sep = g.separator();
  row(os, sep, "n", "m", "budget", "trials", "seed", "refuted_contiguous", "rate_contiguous",
      "refuted_even_paz", "rate_even_paz");
  for (std::size_t s = 0; s < a.sizes.size(); ++s) {
    std::size_t split = 0, truncated = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
      split += cells[s * a.trials + t].split;
      truncated += cells[s * a.trials + t].truncated;
    }
    const auto trials = static_cast<double>(a.trials);
    const std::size_t n = a.sizes[s];
    row(os, sep, n, construction_m(n), query_budget(n), a.trials, g.seed, split,
        fixed(static_cast<double>(split) / trials, 4), truncated, fixed(static_cast<double>(truncated) / trials, 4));
  }
}

struct BenchArgs {
  std::vector<std::string> algorithms{"even-paz", "last-diminisher", "contiguous"};
  std::size_t max_n = 1024;
};

void cmd_bench(const Globals& g, const BenchArgs& a) {
  struct Job {
    std::string algorithm;
    std::size_t n;
    std::size_t queries = 0;
  };
  std::vector<Job> jobs;
  for (const auto& name : a.algorithms) {
    algorithm_by_name(name);
    for (std::size_t n = 1; n <= a.max_n; n *= 2) {
      if (name == "cut-and-choose" && n != 2) continue;
      jobs.push_back({name, n});
    }
  }
  parallel_for(jobs.size(), [&](std::size_t k) {
    UniformOracle uniform(jobs[k].n);
    jobs[k].queries = run_algorithm(algorithm_by_name(jobs[k].algorithm), uniform).query_count;
  });
  Output out(g.out);
  auto& os = out.stream();
  const char sep = g.separator();
  row(os, sep, "algorithm", "n", "queries", "q_over_nlogn", "q_over_n2");
  for (const auto& j : jobs) {
    const auto n = static_cast<double>(j.n);
    const auto q = static_cast<double>(j.queries);
    row(os, sep, j.algorithm, j.n, j.queries, j.n == 1 ? std::string("NA") : fixed(q / (n * std::log2(n))),
        fixed(q / (n * n)));
  }
}

struct BoundsArgs {
  std::size_t min_m = 32;
  std::size_t max_m = 32768;
};

void cmd_bounds(const Globals& g, const BoundsArgs& a) {
  if (a.min_m == 0 || a.min_m % 32 != 0 || a.max_m % 32 != 0 || a.max_m < a.min_m) {
    throw ExitError(kExitMalformed, "--min-m and --max-m must be positive multiples of 32, min <= max");
  }
  const auto scan = union_bound_scan(a.min_m, a.max_m);
  Output out(g.out);
  auto& os = out.stream();
  const char sep = g.separator();
  row(os, sep, "m", "ln_binomial", "ln_double_factorial", "ln_pow2_term", "exp_term", "total_log");
  for (const auto& t : scan) {
    row(os, sep, t.m, fixed(t.ln_binomial, 9), fixed(t.ln_double_factorial, 9), fixed(t.ln_pow2_term, 9),
        fixed(t.exp_term, 9), fixed(t.total_log, 9));
  }
  if (const auto crossing = union_bound_crossing(scan)) {
    std::cerr << "crossing m*=" << *crossing << '\n';
  } else {
    std::cerr << "crossing m*=none in range\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rwlab: cake-cutting query protocols, fairness checks and adversary experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();
  app.add_option("--out", globals.out, "Output path (default: stdout)");
  app.add_option("--format", globals.format, "Table format")
      ->check(CLI::IsMember({"csv", "tsv"}))
      ->capture_default_str();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write an adversary instance or a valuation profile");
  auto* adv_flag = generate->add_flag("--adversary", gen.adversary, "Adversary instance (n >= 33)");
  auto* rnd_flag = generate->add_flag("--random", gen.random, "Random piecewise-constant profile");
  adv_flag->excludes(rnd_flag);
  generate->add_flag("--figure2,--worked-example", gen.worked_example, "The three-agent worked example")->needs(rnd_flag);
  generate->add_option("-n", gen.n, "Number of agents");
  generate->add_option("--graph-out", gen.graph_out, "Also write the social graph here");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an algorithm through a counting oracle");
  run_cmd->add_option("algorithm", run.algorithm, "Algorithm name")
      ->required()
      ->check(CLI::IsMember(algorithm_names()));
  run_cmd->add_option("instance", run.instance, "Instance or profile file")->required();
  run_cmd->add_option("--budget", run.budget, "Query budget (adversary default: the construction budget)");
  run_cmd->add_option("--transcript-out", run.transcript_out, "Write the query transcript here");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Report the four fairness properties");
  check_cmd->add_option("allocation", check.allocation, "Allocation file")->required();
  check_cmd->add_option("instance", check.instance, "Instance or profile file")->required();
  check_cmd->add_option("graph", check.graph, "Graph file (default: instance graph or complete graph)");

  AttackArgs att;
  auto* attack_cmd = app.add_subcommand("attack", "Try to refute local proportionality");
  attack_cmd->add_option("allocation", att.allocation, "Allocation file")->required();
  attack_cmd->add_option("transcript", att.transcript, "Transcript file")->required();
  attack_cmd->add_option("instance", att.instance, "Adversary instance file")->required();

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Refutation rates against budgeted strategies");
  exp_cmd->add_option("--n", exp.sizes, "Agent counts, comma separated")->delimiter(',')->capture_default_str();
  exp_cmd->add_option("--trials", exp.trials, "Seeds per agent count")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Query counts on uniform agents, n doubling from 1");
  bench_cmd->add_option("--algorithms", bench.algorithms, "Algorithms, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(algorithm_names()))
      ->capture_default_str();
  bench_cmd->add_option("--max-n", bench.max_n, "Largest n")->capture_default_str();

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Union-bound log terms over m");
  bounds_cmd->add_option("--min-m", bounds.min_m)->capture_default_str();
  bounds_cmd->add_option("--max-m", bounds.max_m)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }

  try {
    if (generate->parsed()) {
      if (!gen.adversary && !gen.random) throw ExitError(kExitMalformed, "generate needs --adversary or --random");
      cmd_generate(globals, gen);
    } else if (run_cmd->parsed()) {
      cmd_run(globals, run);
    } else if (check_cmd->parsed()) {
      cmd_check(globals, check);
    } else if (attack_cmd->parsed()) {
      cmd_attack(globals, att);
    } else if (exp_cmd->parsed()) {
      cmd_experiment(globals, exp);
    } else if (bench_cmd->parsed()) {
      cmd_bench(globals, bench);
    } else if (bounds_cmd->parsed()) {
      cmd_bounds(globals, bounds);
    }
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstruction;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
