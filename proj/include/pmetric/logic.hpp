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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pmetric/model.hpp"

namespace pmetric {

/// Formula of the modal logic with true, diamond, conjunction, negation and
/// truncated subtraction of a rational constant. Immutable; subformulae are
/// shared.
class Formula {
 public:
  enum class Kind { True, Diamond, And, Not, Minus };

  static Formula truth();
  static Formula diamond(Formula f);
  static Formula conj(Formula f, Formula g);
  static Formula negation(Formula f);
  /// Throws std::invalid_argument unless q is in [0,1].
  static Formula minus(Formula f, Rational q);

  Kind kind() const { return node_->kind; }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }
  const Rational& constant() const { return node_->constant; }

  /// Parenthesized text accepted by parse_formula.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::vector<Formula> children;
    Rational constant;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar: conj := minus ('&' minus)* ; minus := unary ('-' rational)* ;
/// unary := '<>' unary | '!' unary | 'true' | '(' conj ')'.
/// Throws std::invalid_argument with the offending position.
Formula parse_formula(std::string_view text);

using Valuation = std::vector<Rational>;

/// Real-valued interpretation at discount `discount`, exactly.
Valuation interpret(const Pts& pts, const Formula& f, const Rational& discount = Rational(1));

/// Modal depth: number of nested diamonds.
std::size_t depth(const Formula& f);

/// max over `formulas` of |[f](i) - [f](j)|. Throws std::invalid_argument if
/// `formulas` is empty.
Rational logical_lower_bound(const Pts& pts, const std::vector<Formula>& formulas, StateIndex i, StateIndex j,
                             const Rational& discount = Rational(1));

/// Constants used by random_formula: every p/q in [0,1] with q <= 8.
const std::vector<Rational>& constant_grid();

/// Deterministic pseudo-random formula of depth <= max_depth.
Formula random_formula(std::uint64_t seed, std::size_t max_depth);

}  // namespace pmetric
