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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "pmetric/fo_formula.hpp"
#include "pmetric/model.hpp"

namespace pmetric {

/// pseudo(d) over the N^2 variables d_ij: ranges, zero diagonal, symmetry
/// (one equation per unordered pair) and all N^3 triangle inequalities.
/// Unquantified.
FoFormula build_pseudo(std::size_t n);

/// post-fixed(d) for every ordered pair (i0, j0). The probability-sum guards
/// are decided here: live/live pairs get an existential coupling block over
/// all N^2 mu variables, stuck/stuck pairs get 0 <= d, mixed pairs get
/// discount <= d. Unquantified in d.
FoFormula build_post_fixed(const Pts& pts, const Rational& discount = Rational(1));

/// Closed sentence: exists d. pseudo(d) && post-fixed(d) && 0 <= d_{i0 j0} <= bound.
struct Query {
  FoFormula sentence;
  StateIndex i0 = 0;
  StateIndex j0 = 0;
  Rational bound;
  Rational discount = Rational(1);
  std::size_t num_states = 0;
  bool simplified = false;
};

Query build_query(const Pts& pts, StateIndex i0, StateIndex j0, const Rational& bound,
                  const Rational& discount = Rational(1));

/// A known distance contradicts a constraint of pseudo or post-fixed.
class SimplifyConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rewrites: d_ii -> 0 and d_ij -> d_ji for i > j; variables of states at
/// known distance 0 are merged onto the smallest index; known distances are
/// substituted; mu_ij -> 0 in the block of (i0, j0) when pi(i0, j) = 0 or
/// pi(j0, i) = 0; constants are folded, true conjuncts and duplicates
/// dropped, and coupling blocks left without free variables are decided by
/// exact LP. Throws SimplifyConflict when a known value falsifies a pseudo or
/// post-fixed constraint; a falsified bound turns the sentence false.
FoFormula simplify(const FoFormula& f, const PartialDistances& known, const Pts& pts);
Query simplify(const Query& q, const PartialDistances& known, const Pts& pts);

/// Value of a d variable (0-based indices, any order); std::nullopt leaves
/// the variable in place.
using DAssignment = std::function<std::optional<Rational>(std::size_t i, std::size_t j)>;

/// Substitutes every D variable by `values` and decides the rest: ground
/// constraints are evaluated and existential blocks over mu variables are
/// decided as exact LP feasibility problems. Throws std::invalid_argument if
/// a D variable has no value or a block is not linear.
bool evaluate(const FoFormula& f, const DAssignment& values);

/// SMT-LIB 2 script in QF_NRA: every variable, bound or free, becomes one
/// declared constant (coupling variables carry their block's pair in the
/// name), top-level conjuncts become separate assertions.
std::string emit_smtlib(const FoFormula& f);

/// Mathematica Reduce[...] expression with nested Exists blocks.
std::string emit_mathematica(const FoFormula& f);

std::string variable_name_smtlib(const Var& v);
std::string variable_name_mathematica(const Var& v, bool wide);

}  // namespace pmetric
