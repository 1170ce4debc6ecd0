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

#include <vector>

#include "pmetric/model.hpp"

namespace pmetric {

/// Probability of eventually reaching a stuck state, per state.
using TerminationVector = std::vector<Rational>;

/// Exact termination probabilities: 1 on stuck states, 0 where no stuck state
/// is reachable in the support graph, and the unique solution of
/// tau = pi * tau elsewhere (exact Gaussian elimination).
TerminationVector termination_probabilities(const Pts& pts);

/// The first `steps` terms of the monotone iteration tau_{n+1} = pi * tau_n
/// (stuck states pinned to 1) from tau_0 = 0. Element n is tau_n.
std::vector<TerminationVector> termination_iterates(const Pts& pts, std::size_t steps);

/// Pairs whose undiscounted distance is known in closed form: both stuck (0),
/// one stuck and one live (1), and pairs where one side never terminates (the
/// other side's termination probability).
PartialDistances shortcut_distances(const Pts& pts, const TerminationVector& tau);

/// Solves A x = b exactly. Returns std::nullopt if A is singular.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace pmetric
