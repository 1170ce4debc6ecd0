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

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pmetric/rational.hpp"

namespace pmetric {

/// Real variable of the post-fixed-point sentences. D variables are the
/// distances d_ij; Mu variables are coupling entries mu_ij of the block
/// introduced for the ordered pair (i0, j0). Indices are 0-based.
struct Var {
  enum class Kind { D, Mu };
  Kind kind = Kind::D;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t i0 = 0;
  std::size_t j0 = 0;

  static Var d(std::size_t i, std::size_t j) { return {Kind::D, i, j, 0, 0}; }
  static Var mu(std::size_t i, std::size_t j, std::size_t i0, std::size_t j0) { return {Kind::Mu, i, j, i0, j0}; }

  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Sorted product of variables; empty for the constant monomial.
using Monomial = std::vector<Var>;

/// Polynomial with exact coefficients; zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational c);  // NOLINT: constants convert implicitly
  Polynomial(Var v);       // NOLINT

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_constant() const;
  /// Constant term (0 when absent).
  Rational constant() const;
  std::size_t degree() const;
  std::set<Var> variables() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(Monomial m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

enum class Rel { Le, Lt, Eq, Ge, Gt };

/// Which part of the sentence a constraint came from. A ground constraint
/// that folds to false is a conflict unless it comes from the bound.
enum class Origin { Pseudo, PostFixed, Bound };

/// Tree of an existential first-order sentence over the reals.
struct FoFormula {
  enum class Kind { Const, Atom, Between, And, Or, Exists };

  Kind kind = Kind::Const;
  bool value = true;                 // Const
  std::vector<Polynomial> terms;     // Atom: lhs, rhs; Between: lo, t, hi
  Rel rel = Rel::Le;                 // Atom
  Origin origin = Origin::Pseudo;    // Atom, Between
  std::vector<Var> bound;            // Exists
  std::vector<FoFormula> children;   // And, Or: operands; Exists: body

  static FoFormula constant(bool v);
  static FoFormula atom(Polynomial lhs, Rel rel, Polynomial rhs, Origin origin);
  /// lo <= t <= hi.
  static FoFormula between(Polynomial lo, Polynomial t, Polynomial hi, Origin origin);
  /// Flattens nested conjunctions; an empty conjunction is true.
  static FoFormula conj(std::vector<FoFormula> parts);
  static FoFormula disj(std::vector<FoFormula> parts);
  static FoFormula exists(std::vector<Var> vars, FoFormula body);

  friend bool operator==(const FoFormula&, const FoFormula&) = default;
};

/// Variables occurring anywhere in `f`, bound or free.
std::set<Var> occurring_variables(const FoFormula& f);

/// Variables not bound by any enclosing quantifier.
std::set<Var> free_variables(const FoFormula& f);

/// Number of Exists nodes (including the outermost).
std::size_t count_exists(const FoFormula& f);

/// Number of atomic constraints (Atom and Between nodes).
std::size_t count_atoms(const FoFormula& f);

bool holds(const Rational& lhs, Rel rel, const Rational& rhs);

/// Debug rendering, also used as a structural key.
std::string debug_string(const FoFormula& f);

}  // namespace pmetric
