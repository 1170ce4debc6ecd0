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

#include "pmetric/logic.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <stdexcept>

namespace pmetric {

Formula Formula::truth() { return Formula(std::make_shared<const Node>(Node{Kind::True, {}, Rational(0)})); }

Formula Formula::diamond(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Diamond, {std::move(f)}, Rational(0)}));
}

Formula Formula::conj(Formula f, Formula g) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {std::move(f), std::move(g)}, Rational(0)}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {std::move(f)}, Rational(0)}));
}

Formula Formula::minus(Formula f, Rational q) {
  if (q.sign() < 0 || q > Rational(1)) throw std::invalid_argument("constant " + q.str() + " is outside [0,1]");
  return Formula(std::make_shared<const Node>(Node{Kind::Minus, {std::move(f)}, std::move(q)}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.node_->constant == b.node_->constant && a.node_->children == b.node_->children;
}

std::string Formula::str() const {
  switch (kind()) {
    case Kind::True:
      return "true";
    case Kind::Diamond:
      return "<> " + left().str();
    case Kind::Not:
      return "! " + left().str();
    case Kind::And:
      return "(" + left().str() + " & " + right().str() + ")";
    case Kind::Minus:
      return "(" + left().str() + " - " + constant().str() + ")";
  }
  return {};
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = conj();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  Formula conj() {
    Formula f = minus();
    while (accept("&")) f = Formula::conj(std::move(f), minus());
    return f;
  }

  Formula minus() {
    Formula f = unary();
    while (accept("-")) f = Formula::minus(std::move(f), rational());
    return f;
  }

  Formula unary() {
    if (accept("<>")) return Formula::diamond(unary());
    if (accept("!")) return Formula::negation(unary());
    if (accept("true")) return Formula::truth();
    if (accept("(")) {
      Formula f = conj();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    fail("expected 'true', '<>', '!' or '('");
  }

  Rational rational() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
      ++pos_;
    }
    try {
      Rational q = Rational::parse(text_.substr(start, pos_ - start));
      if (q > Rational(1)) fail("constant exceeds 1");
      return q;
    } catch (const std::invalid_argument&) {
      pos_ = start;
      fail("expected a rational constant p/q");
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("formula position " + std::to_string(pos_ + 1) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

Valuation interpret(const Pts& pts, const Formula& f, const Rational& discount) {
  const std::size_t n = pts.size();
  switch (f.kind()) {
    case Formula::Kind::True:
      return Valuation(n, Rational(1));
    case Formula::Kind::Diamond: {
      const Valuation inner = interpret(pts, f.left(), discount);
      Valuation out(n);
      for (std::size_t s = 0; s < n; ++s) {
        Rational sum;
        for (std::size_t t = 0; t < n; ++t) {
          if (!pts.pi(s, t).is_zero()) sum += pts.pi(s, t) * inner[t];
        }
        out[s] = discount * sum;
      }
      return out;
    }
    case Formula::Kind::And: {
      Valuation a = interpret(pts, f.left(), discount);
      const Valuation b = interpret(pts, f.right(), discount);
      for (std::size_t s = 0; s < n; ++s) a[s] = min(a[s], b[s]);
      return a;
    }
    case Formula::Kind::Not: {
      Valuation a = interpret(pts, f.left(), discount);
      for (auto& v : a) v = Rational(1) - v;
      return a;
    }
    case Formula::Kind::Minus: {
      Valuation a = interpret(pts, f.left(), discount);
      for (auto& v : a) v = max(v - f.constant(), Rational(0));
      return a;
    }
  }
  return {};
}

std::size_t depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return 0;
    case Formula::Kind::Diamond:
      return depth(f.left()) + 1;
    case Formula::Kind::And:
      return std::max(depth(f.left()), depth(f.right()));
    case Formula::Kind::Not:
    case Formula::Kind::Minus:
      return depth(f.left());
  }
  return 0;
}

Rational logical_lower_bound(const Pts& pts, const std::vector<Formula>& formulas, StateIndex i, StateIndex j,
                             const Rational& discount) {
  if (formulas.empty()) throw std::invalid_argument("empty formula set");
  Rational best;
  for (const auto& f : formulas) {
    const Valuation v = interpret(pts, f, discount);
    best = max(best, (v[i] - v[j]).abs());
  }
  return best;
}

const std::vector<Rational>& constant_grid() {
  static const std::vector<Rational> grid = [] {
    std::set<Rational> values;
    for (long q = 1; q <= 8; ++q) {
      for (long p = 0; p <= q; ++p) values.insert(Rational(p, q));
    }
    return std::vector<Rational>(values.begin(), values.end());
  }();
  return grid;
}

namespace {

class FormulaGenerator {
 public:
  explicit FormulaGenerator(std::uint64_t seed) : rng_(seed) {}

  Formula generate(std::size_t max_depth, std::size_t& budget) {
    const bool can_grow = budget > 0;
    if (can_grow) --budget;
    // Weights: true 2, diamond 3, and 2, not 2, minus 2 (out of 11).
    std::uint64_t roll = can_grow ? rng_() % 11 : 0;
    if (roll >= 2 && roll < 5 && max_depth == 0) roll = 0;
    if (roll < 2) return Formula::truth();
    if (roll < 5) return Formula::diamond(generate(max_depth - 1, budget));
    if (roll < 7) {
      Formula a = generate(max_depth, budget);
      return Formula::conj(std::move(a), generate(max_depth, budget));
    }
    if (roll < 9) return Formula::negation(generate(max_depth, budget));
    const auto& grid = constant_grid();
    Rational q = grid[rng_() % grid.size()];
    return Formula::minus(generate(max_depth, budget), std::move(q));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Formula random_formula(std::uint64_t seed, std::size_t max_depth) {
  FormulaGenerator gen(seed);
  std::size_t budget = 12;
  return gen.generate(max_depth, budget);
}

}  // namespace pmetric
