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

#ifndef RWLAB_IO_HPP
#define RWLAB_IO_HPP

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rwlab/adversary.hpp"
#include "rwlab/cake.hpp"
#include "rwlab/fairness.hpp"
#include "rwlab/query.hpp"

namespace rwlab {

/// Malformed text input. Line numbers are 1-based; 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// All formats are line-oriented. Blank lines and lines starting with '#'
// are skipped when reading. Rationals are written "p/q"; bare integers are
// accepted on input.

/// "t0 d0 t1 d1 ... tk", e.g. "0/1 4/1 1/4 0/1 1/1".
std::string format_valuation(const Valuation& v);
Valuation parse_valuation(std::string_view line);

/// "lo..hi lo..hi ..."; the empty piece is the empty string.
std::string format_piece(const Piece& p);
Piece parse_piece(std::string_view text);

/// First line n, then one valuation per line.
void write_profile(std::ostream& os, std::span<const Valuation> profile);
std::vector<Valuation> read_profile(std::istream& is);

/// First line n, then one "i j" edge per line (0-indexed, i < j).
void write_graph(std::ostream& os, const SocialGraph& g);
SocialGraph read_graph(std::istream& is);

/// One line per agent: "<id> <piece>". Every id in [0, n) exactly once.
void write_allocation(std::ostream& os, const Allocation& a);
Allocation read_allocation(std::istream& is);

/// "EVAL <agent> <x> <y> -> <v>" or "CUT <agent> <x> <alpha> -> <y|NONE>".
void write_transcript(std::ostream& os, const Transcript& t);
Transcript read_transcript(std::istream& is);

/// Header "n m r seed", then "L: ...", "R: ...", "U: ..." membership lines,
/// then one "i: j1 j2 ..." line per L agent listing S_i.
void write_instance(std::ostream& os, const AdversaryInstance& inst);
AdversaryInstance read_instance(std::istream& is);

/// Number of whitespace-separated tokens on the first content line; lets
/// callers tell an instance header (4) from a profile header (1).
std::size_t header_width(std::string_view content);

}  // namespace rwlab

#endif  // RWLAB_IO_HPP
