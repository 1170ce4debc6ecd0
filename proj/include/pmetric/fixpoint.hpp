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
#include <string>
#include <vector>

#include "pmetric/delta.hpp"
#include "pmetric/model.hpp"

namespace pmetric {

/// Returns Delta^n(top) exactly (top = all-zero matrix).
DistanceMatrix iterate(const Pts& pts, const Rational& discount, std::size_t n, std::size_t workers = 1);

struct PairExcess {
  StatePair pair;
  Rational excess;  // Delta(d)(pair) - d(pair) > 0
};

struct PostFixedCheck {
  bool holds = false;
  std::vector<PairExcess> violations;
};

/// Exactly checks Delta(d) <= d entrywise. Throws std::invalid_argument when
/// d is not a 1-bounded pseudometric.
PostFixedCheck is_post_fixed(const Pts& pts, const DistanceMatrix& d, const Rational& discount = Rational(1),
                             std::size_t workers = 1);

/// Distances known exactly without iteration: stuck/mixed pairs, the
/// termination shortcuts (undiscounted only) and bisimilar pairs (0).
PartialDistances known_distances(const Pts& pts, const Rational& discount);

struct ExactSolveOptions {
  std::size_t workers = 1;
  std::size_t max_policy_rounds = 64;
};

/// Coupling-stabilization solver. Starting from the optimal couplings of
/// Delta at `seed`, repeatedly solves the linear system the couplings induce
/// (least solution, known pairs pinned) and improves the couplings. Returns a
/// matrix only if it is a pseudometric, vanishes on bisimilar pairs and is an
/// exact fixed point of Delta; such a matrix is the behavioural distance.
std::optional<DistanceMatrix> exact_solve(const Pts& pts, const Rational& discount, const DistanceMatrix& seed,
                                          const ExactSolveOptions& options = {});

struct FixpointOptions {
  /// 0 means 10 * N^2 rounds.
  std::size_t max_rounds = 0;
  std::size_t workers = 1;
  bool use_quotient = true;
  /// When set, lower iterates are rounded down to multiples of 1/D (followed
  /// by a metric closure) between rounds.
  std::optional<unsigned long> round_down_denominator;
  std::size_t max_policy_rounds = 64;
};

enum class BoundsMethod { ExactSolve, Inflation, Uncertified };

struct BoundsResult {
  DistanceMatrix lower;
  DistanceMatrix upper;
  std::vector<StatePair> exact;  // pairs (i < j) with lower == upper
  DistanceMatrix certificate;    // verified post-fixed pseudometric backing `upper`
  std::size_t iterations = 0;
  Rational gap;
  bool certified = false;  // gap <= epsilon
  BoundsMethod method = BoundsMethod::Uncertified;
  std::size_t quotient_states = 0;
  std::size_t exact_solve_attempts = 0;
  std::string notes;
};

/// Lower and upper bounds on every distance with gap <= epsilon when
/// certified. Lower bounds are iterates from the top; upper bounds come only
/// from exactly verified post-fixed points. Throws std::invalid_argument when
/// epsilon <= 0 or the discount is outside (0,1].
BoundsResult approximate_all(const Pts& pts, const Rational& discount, const Rational& epsilon,
                             const FixpointOptions& options = {});

std::string to_string(BoundsMethod m);

}  // namespace pmetric
