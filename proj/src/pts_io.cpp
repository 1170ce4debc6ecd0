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

#include "pmetric/pts_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace pmetric {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; is >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (tok.size() > 9) throw ParseError(line, std::string(what) + " '" + tok + "' is too large");
  return std::stoul(tok);
}

StateIndex parse_state(const std::string& tok, std::size_t n, std::size_t line) {
  const auto k = parse_count(tok, line, "a state index");
  if (k < 1 || k > n) {
    throw ParseError(line, "state index " + tok + " out of range [1," + std::to_string(n) + "]");
  }
  return k - 1;
}

Rational parse_probability(const std::string& tok, std::size_t line) {
  if (tok.find_first_of(".eE") != std::string::npos) {
    throw ParseError(line, "decimal literal '" + tok + "' not accepted; write p/q");
  }
  Rational p;
  try {
    p = Rational::parse(tok);
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
  if (p.sign() < 0 || p > Rational(1)) throw ParseError(line, "probability " + tok + " out of [0,1]");
  return p;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

void expect_header(const std::vector<Line>& lines, const char* kind) {
  if (lines.empty()) throw ParseError(0, std::string("empty document, expected '") + kind + " v1'");
  const auto& first = lines.front();
  if (first.tokens.size() != 2 || first.tokens[0] != kind || first.tokens[1] != "v1") {
    throw ParseError(first.number, std::string("expected header '") + kind + " v1'");
  }
  if (lines.size() < 2 || lines[1].tokens.front() != "states") {
    throw ParseError(lines.size() < 2 ? first.number : lines[1].number, "expected 'states <N>' after the header");
  }
}

std::size_t parse_states_line(const Line& line) {
  if (line.tokens.size() != 2) throw ParseError(line.number, "expected 'states <N>'");
  const auto n = parse_count(line.tokens[1], line.number, "a state count");
  if (n == 0) throw ParseError(line.number, "state count must be positive");
  return n;
}

}  // namespace

PtsDocument parse_pts_document(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "pts");
  PtsDocument doc;
  doc.num_states = parse_states_line(lines[1]);
  std::set<std::pair<StateIndex, StateIndex>> seen;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& kw = line.tokens[0];
    if (kw == "names") {
      if (!doc.names.empty()) throw ParseError(line.number, "duplicate 'names' line");
      if (!doc.arcs.empty()) throw ParseError(line.number, "'names' must precede the arcs");
      if (line.tokens.size() - 1 != doc.num_states) {
        throw ParseError(line.number, "expected " + std::to_string(doc.num_states) + " names, got " +
                                          std::to_string(line.tokens.size() - 1));
      }
      std::set<std::string> unique;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        if (!is_identifier(line.tokens[t])) throw ParseError(line.number, "invalid name '" + line.tokens[t] + "'");
        if (!unique.insert(line.tokens[t]).second) {
          throw ParseError(line.number, "duplicate name '" + line.tokens[t] + "'");
        }
        doc.names.push_back(line.tokens[t]);
      }
    } else if (kw == "arc") {
      if (line.tokens.size() != 4) throw ParseError(line.number, "expected 'arc <i> <j> <p>/<q>'");
      Arc arc;
      arc.from = parse_state(line.tokens[1], doc.num_states, line.number);
      arc.to = parse_state(line.tokens[2], doc.num_states, line.number);
      arc.probability = parse_probability(line.tokens[3], line.number);
      arc.line = line.number;
      if (!seen.insert({arc.from, arc.to}).second) {
        throw ParseError(line.number, "duplicate arc " + line.tokens[1] + " -> " + line.tokens[2]);
      }
      doc.arcs.push_back(std::move(arc));
    } else if (kw == "states") {
      throw ParseError(line.number, "duplicate 'states' line");
    } else {
      throw ParseError(line.number, "unknown directive '" + kw + "'");
    }
  }
  return doc;
}

RationalMatrix to_matrix(const PtsDocument& doc) {
  RationalMatrix pi(doc.num_states);
  for (const auto& arc : doc.arcs) pi(arc.from, arc.to) = arc.probability;
  return pi;
}

Pts parse_pts(std::string_view text) {
  const PtsDocument doc = parse_pts_document(text);
  RationalMatrix pi = to_matrix(doc);
  const auto report = validate_pts(pi);
  if (!report.ok()) {
    // Point at the last arc of the first offending row.
    const auto& v = report.violations.front();
    std::size_t line = 0;
    for (const auto& arc : doc.arcs) {
      if (arc.from == v.states.front()) line = std::max(line, arc.line);
    }
    throw ParseError(line, v.message);
  }
  return Pts(std::move(pi), doc.names);
}

std::string serialize_pts(const Pts& pts) {
  std::ostringstream os;
  os << "pts v1\n";
  os << "states " << pts.size() << "\n";
  if (pts.has_labels()) {
    os << "names";
    for (const auto& l : pts.labels()) os << ' ' << l;
    os << "\n";
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (!pts.pi(i, j).is_zero()) os << "arc " << i + 1 << ' ' << j + 1 << ' ' << pts.pi(i, j).str() << "\n";
    }
  }
  return os.str();
}

DistanceMatrix parse_metric(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "metric");
  const std::size_t n = parse_states_line(lines[1]);
  DistanceMatrix d(n);
  std::set<StatePair> seen;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens[0] != "dist" || line.tokens.size() != 4) {
      throw ParseError(line.number, "expected 'dist <i> <j> <p>/<q>'");
    }
    const auto i = parse_state(line.tokens[1], n, line.number);
    const auto j = parse_state(line.tokens[2], n, line.number);
    const auto v = parse_probability(line.tokens[3], line.number);
    if (i == j && !v.is_zero()) throw ParseError(line.number, "diagonal distance must be 0");
    if (!seen.insert(StatePair::canonical(i, j)).second) {
      throw ParseError(line.number, "duplicate distance for pair " + line.tokens[1] + " " + line.tokens[2]);
    }
    d.set(i, j, v);
  }
  return d;
}

std::string serialize_metric(const DistanceMatrix& d) {
  std::ostringstream os;
  os << "metric v1\nstates " << d.size() << "\n";
  for (auto p : d.pairs()) {
    if (!d.at(p).is_zero()) os << "dist " << p.first + 1 << ' ' << p.second + 1 << ' ' << d.at(p).str() << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace pmetric
