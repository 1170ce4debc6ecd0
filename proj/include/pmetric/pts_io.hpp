// Copyright 2026 The pmetric Authors
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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmetric/model.hpp"

namespace pmetric {

/// Syntax or semantic error in an input document, with its 1-based line
/// (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Arc {
  StateIndex from = 0;  // 0-based
  StateIndex to = 0;
  Rational probability;
  std::size_t line = 0;
};

/// Grammar-level content of a `pts v1` document.
struct PtsDocument {
  std::string version = "v1";
  std::size_t num_states = 0;
  std::vector<std::string> names;  // empty when the document has no names line
  std::vector<Arc> arcs;
};

/// Grammar only: `pts v1`, `states <N>`, optional `names ...`, and
/// `arc <i> <j> <p>/<q>|<int>` lines; '#' starts a comment. Checks index
/// ranges, probability range and duplicate arcs. Throws ParseError.
PtsDocument parse_pts_document(std::string_view text);

RationalMatrix to_matrix(const PtsDocument& doc);

/// parse_pts_document followed by the row-sum validation. Throws ParseError.
Pts parse_pts(std::string_view text);

/// Canonical document: arcs sorted by (from, to), zero arcs omitted,
/// probabilities in lowest terms.
std::string serialize_pts(const Pts& pts);

/// `metric v1` / `states <N>` / `dist <i> <j> <p>/<q>` lines; missing pairs
/// are 0. The result is not checked for the pseudometric axioms beyond
/// symmetry of input. Throws ParseError.
DistanceMatrix parse_metric(std::string_view text);
std::string serialize_metric(const DistanceMatrix& d);

std::string read_file(const std::string& path);

}  // namespace pmetric
