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
#include <vector>

#include "pmetric/model.hpp"
#include "pmetric/rational.hpp"

namespace pmetric {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEq, Equal, GreaterEq };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/// Bounds of one variable; std::nullopt means unbounded on that side.
struct VariableBound {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;

  static VariableBound free() { return {std::nullopt, std::nullopt}; }
};

struct LinearProgram {
  Sense sense = Sense::Minimize;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
  /// Empty means every variable is in [0, +inf).
  std::vector<VariableBound> bounds;

  std::size_t num_variables() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> solution;
};

/// Exact two-phase simplex with Bland's anti-cycling rule. Deterministic for a
/// fixed input. Throws std::invalid_argument on dimension mismatch.
LpOutcome lp_solve(const LinearProgram& lp);

/// True iff `x` satisfies every constraint and bound of `lp` exactly.
bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x);

struct TransportResult {
  Rational value;
  Coupling plan;
};

/// Minimum of sum cost(i,j) mu(i,j) over couplings with the given row and
/// column marginals. Both marginals must be nonnegative and sum to 1
/// (std::invalid_argument otherwise).
TransportResult transport_min(const RationalMatrix& cost, const std::vector<Rational>& row_marginal,
                              const std::vector<Rational>& col_marginal);

}  // namespace pmetric
