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
#include <random>
#include <string>
#include <vector>

#include "pmetric/model.hpp"

namespace pmetric::testing {

inline Rational q(long num, long den = 1) { return Rational(num, den); }

/// The five-state running example: s4 stuck, s3 and s5 self-loops.
Pts ex1();

/// Behavioural distances of ex1() at discount 1 (0-based matrix).
DistanceMatrix ex1_distances();

/// Random system on n states; each state is stuck with probability
/// `stuck_chance` percent, otherwise has 1..3 successors with weights up to
/// `max_weight`.
Pts random_pts(std::mt19937_64& rng, std::size_t n, int stuck_chance = 20, int max_weight = 4);

/// Random system on n states built by splitting the states of a random
/// system on m <= n states into copies; states copied from the same state
/// are bisimilar. `projection` receives the copy map.
Pts random_lumpable_pts(std::mt19937_64& rng, std::size_t n, std::size_t m, std::vector<std::size_t>* projection = nullptr);

/// Random 1-bounded pseudometric with small denominators.
DistanceMatrix random_pseudometric(std::mt19937_64& rng, std::size_t n);

/// Minimum transport cost by enumerating all basic feasible solutions on
/// the supports of the marginals.
Rational transport_by_vertices(const RationalMatrix& cost, const std::vector<Rational>& row,
                               const std::vector<Rational>& col);

/// Half the L1 distance of two distributions.
Rational half_l1(std::span<const Rational> a, std::span<const Rational> b);

/// Gauss-Jordan on a consistent system with full column rank (rows may
/// exceed columns). std::nullopt if inconsistent or rank deficient.
std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// discount * pi * v.
std::vector<Rational> step(const Pts& pts, const std::vector<Rational>& v, const Rational& discount);

/// Directory holding the sample .pts files.
std::string data_path(const std::string& name);

}  // namespace pmetric::testing
