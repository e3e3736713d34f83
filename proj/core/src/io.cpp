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

#include "rwlab/io.hpp"

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace rwlab {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

bool is_content(std::string_view line) {
  const auto t = tokens(line);
  return !t.empty() && t.front().front() != '#';
}

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  /// Next content line, or nullopt at end of input.
  std::optional<std::string> next() {
    std::string line;
    while (std::getline(is_, line)) {
      ++number_;
      if (is_content(line)) return line;
    }
    return std::nullopt;
  }

  std::string require(const char* what) {
    auto line = next();
    if (!line) throw ParseError(std::string("unexpected end of input, expected ") + what, number_);
    return *line;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& is_;
  std::size_t number_ = 0;
};

template <typename T>
T parse_unsigned(std::string_view s, std::size_t line, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(s) + "'", line);
  }
  return v;
}

Rational parse_rational(std::string_view s, std::size_t line) {
  try {
    return Rational::parse(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

// Wraps domain validation failures from constructors as parse errors.
template <typename F>
auto guarded(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

std::vector<AgentId> parse_id_list(const std::vector<std::string_view>& toks, std::size_t from,
                                   std::size_t line) {
  std::vector<AgentId> ids;
  for (std::size_t k = from; k < toks.size(); ++k) {
    ids.push_back(parse_unsigned<AgentId>(toks[k], line, "agent id"));
  }
  return ids;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string format_valuation(const Valuation& v) {
  std::ostringstream os;
  const auto bps = v.breakpoints();
  const auto dens = v.densities();
  for (std::size_t k = 0; k < dens.size(); ++k) os << bps[k] << ' ' << dens[k] << ' ';
  os << bps.back();
  return os.str();
}

Valuation parse_valuation(std::string_view line) {
  const auto toks = tokens(line);
  if (toks.size() < 3 || toks.size() % 2 == 0) {
    throw ParseError("valuation needs alternating breakpoints and densities");
  }
  std::vector<Rational> bps, dens;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    (k % 2 == 0 ? bps : dens).push_back(parse_rational(toks[k], 0));
  }
  return guarded(0, [&] { return Valuation(std::move(bps), std::move(dens)); });
}

std::string format_piece(const Piece& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& iv : p.intervals()) {
    if (!first) os << ' ';
    os << iv.lo() << ".." << iv.hi();
    first = false;
  }
  return os.str();
}

Piece parse_piece(std::string_view text) {
  std::vector<Interval> raw;
  for (auto tok : tokens(text)) {
    const auto dots = tok.find("..");
    if (dots == std::string_view::npos) {
      throw ParseError("interval must be written lo..hi, got '" + std::string(tok) + "'");
    }
    Rational lo = parse_rational(tok.substr(0, dots), 0);
    Rational hi = parse_rational(tok.substr(dots + 2), 0);
    raw.push_back(guarded(0, [&] { return Interval(lo, hi); }));
  }
  return Piece(std::move(raw));
}

void write_profile(std::ostream& os, std::span<const Valuation> profile) {
  os << profile.size() << '\n';
  for (const auto& v : profile) os << format_valuation(v) << '\n';
}

std::vector<Valuation> read_profile(std::istream& is) {
  LineReader reader(is);
  const auto header = tokens(reader.require("agent count"));
  if (header.size() != 1) throw ParseError("profile header must be a single count", reader.number());
  const auto n = parse_unsigned<std::size_t>(header[0], reader.number(), "agent count");
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string line = reader.require("valuation");
    try {
      out.push_back(parse_valuation(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), reader.number());
    }
  }
  if (reader.next()) throw ParseError("trailing content after profile", reader.number());
  return out;
}

void write_graph(std::ostream& os, const SocialGraph& g) {
  os << g.size() << '\n';
  for (const auto& [i, j] : g.edges()) os << i << ' ' << j << '\n';
}

SocialGraph read_graph(std::istream& is) {
  LineReader reader(is);
  const auto header = tokens(reader.require("vertex count"));
  if (header.size() != 1) throw ParseError("graph header must be a single count", reader.number());
  SocialGraph g(parse_unsigned<std::size_t>(header[0], reader.number(), "vertex count"));
  while (auto line = reader.next()) {
    const auto toks = tokens(*line);
    if (toks.size() != 2) throw ParseError("edge line must be 'i j'", reader.number());
    const auto i = parse_unsigned<AgentId>(toks[0], reader.number(), "vertex");
    const auto j = parse_unsigned<AgentId>(toks[1], reader.number(), "vertex");
    guarded(reader.number(), [&] { g.add_edge(i, j); });
  }
  return g;
}

void write_allocation(std::ostream& os, const Allocation& a) {
  for (AgentId i = 0; i < a.size(); ++i) {
    os << i;
    if (!a[i].empty()) os << ' ' << format_piece(a[i]);
    os << '\n';
  }
}

Allocation read_allocation(std::istream& is) {
  LineReader reader(is);
  std::vector<std::optional<Piece>> slots;
  while (auto line = reader.next()) {
    const std::string_view view(*line);
    const auto toks = tokens(view);
    const auto id = parse_unsigned<AgentId>(toks[0], reader.number(), "agent id");
    if (id >= slots.size()) slots.resize(id + 1);
    if (slots[id]) throw ParseError("agent " + std::to_string(id) + " listed twice", reader.number());
    const auto rest = view.substr(view.find(toks[0]) + toks[0].size());
    try {
      slots[id] = parse_piece(rest);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), reader.number());
    }
  }
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ParseError("agent " + std::to_string(i) + " missing from allocation");
    pieces.push_back(std::move(*slots[i]));
  }
  return Allocation(std::move(pieces));
}

void write_transcript(std::ostream& os, const Transcript& t) {
  for (const auto& e : t.entries) {
    if (const auto* q = std::get_if<EvalQuery>(&e.query.kind)) {
      os << "EVAL " << e.query.agent << ' ' << q->x << ' ' << q->y << " -> " << *e.response << '\n';
    } else {
      const auto& c = std::get<CutQuery>(e.query.kind);
      os << "CUT " << e.query.agent << ' ' << c.x << ' ' << c.alpha << " -> ";
      if (e.response) {
        os << *e.response;
      } else {
        os << "NONE";
      }
      os << '\n';
    }
  }
}

Transcript read_transcript(std::istream& is) {
  LineReader reader(is);
  Transcript t;
  while (auto line = reader.next()) {
    const auto toks = tokens(*line);
    const std::size_t ln = reader.number();
    if (toks.size() != 6 || toks[4] != "->") {
      throw ParseError("transcript line must be 'KIND agent a b -> r'", ln);
    }
    const auto agent = parse_unsigned<AgentId>(toks[1], ln, "agent id");
    Rational a = parse_rational(toks[2], ln);
    Rational b = parse_rational(toks[3], ln);
    if (toks[0] == "EVAL") {
      t.entries.push_back({Query::eval(agent, std::move(a), std::move(b)), parse_rational(toks[5], ln)});
    } else if (toks[0] == "CUT") {
      Response r;
      if (toks[5] != "NONE") r = parse_rational(toks[5], ln);
      t.entries.push_back({Query::cut(agent, std::move(a), std::move(b)), std::move(r)});
    } else {
      throw ParseError("unknown query kind '" + std::string(toks[0]) + "'", ln);
    }
  }
  return t;
}

void write_instance(std::ostream& os, const AdversaryInstance& inst) {
  os << "# n m r seed; query budget " << query_budget(inst.n()) << '\n';
  os << inst.n() << ' ' << inst.m() << ' ' << inst.r() << ' ' << inst.seed() << '\n';
  auto list = [&](const char* tag, std::span<const AgentId> ids) {
    os << tag << ':';
    for (AgentId v : ids) os << ' ' << v;
    os << '\n';
  };
  list("L", inst.left());
  list("R", inst.right());
  list("U", inst.universal());
  for (AgentId i : inst.left()) {
    os << i << ':';
    for (AgentId j : inst.neighborhood(i)) os << ' ' << j;
    os << '\n';
  }
}

AdversaryInstance read_instance(std::istream& is) {
  LineReader reader(is);
  const auto header = tokens(reader.require("instance header"));
  if (header.size() != 4) throw ParseError("instance header must be 'n m r seed'", reader.number());
  const std::size_t ln = reader.number();
  const auto n = parse_unsigned<std::size_t>(header[0], ln, "n");
  const auto m = parse_unsigned<std::size_t>(header[1], ln, "m");
  const auto r = parse_unsigned<std::size_t>(header[2], ln, "r");
  const auto seed = parse_unsigned<std::uint64_t>(header[3], ln, "seed");

  auto membership = [&](std::string_view tag) {
    const std::string line = reader.require("membership line");
    const auto toks = tokens(line);
    if (toks.empty() || toks[0] != std::string(tag) + ":") {
      throw ParseError("expected '" + std::string(tag) + ":' line", reader.number());
    }
    return parse_id_list(toks, 1, reader.number());
  };
  auto left = membership("L");
  auto right = membership("R");
  auto universal = membership("U");

  std::vector<std::vector<AgentId>> neighborhoods(n);
  std::vector<bool> seen(n, false);
  while (auto line = reader.next()) {
    const auto toks = tokens(*line);
    const std::string_view head = toks[0];
    if (head.size() < 2 || head.back() != ':') {
      throw ParseError("neighborhood line must start with 'i:'", reader.number());
    }
    const auto i = parse_unsigned<AgentId>(head.substr(0, head.size() - 1), reader.number(), "agent id");
    if (i >= n || seen[i]) throw ParseError("bad or repeated neighborhood owner", reader.number());
    seen[i] = true;
    neighborhoods[i] = parse_id_list(toks, 1, reader.number());
  }
  try {
    auto inst = AdversaryInstance::from_parts(n, seed, std::move(left), std::move(right),
                                              std::move(universal), std::move(neighborhoods));
    if (inst.m() != m || inst.r() != r) throw ParseError("header m/r disagree with n", 1);
    return inst;
  } catch (const ConstructionError& e) {
    throw ParseError(e.what());
  }
}

std::size_t header_width(std::string_view content) {
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    const auto line = content.substr(start, end - start);
    if (is_content(line)) return tokens(line).size();
    start = end + 1;
  }
  return 0;
}

}  // namespace rwlab
