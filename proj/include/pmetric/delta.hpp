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

#include <map>
#include <variant>
#include <vector>

#include "pmetric/lp.hpp"
#include "pmetric/model.hpp"

namespace pmetric {

enum class PairCase { BothLive, BothStuck, Mixed };

PairCase classify_pair(const Pts& pts, StateIndex i, StateIndex j);

/// One evaluation of the distance functional at a state pair.
struct DeltaValue {
  Rational value;
  /// Coupling for the dual form, the nonexpansive function f for the primal
  /// form, nothing for stuck/mixed pairs.
  std::variant<std::monostate, Coupling, std::vector<Rational>> witness;
  PairCase pair_case = PairCase::BothLive;
};

/// Throws std::invalid_argument unless 0 < discount <= 1.
void check_discount(const Rational& discount);

/// Dual (transportation) form. For two live states the value is
/// discount * min over couplings mu with column marginal pi(i,.) and row
/// marginal pi(j,.) of sum d(k,l) mu(k,l); stuck pairs give 0 and mixed pairs
/// give `discount`.
DeltaValue delta_dual(const Pts& pts, const DistanceMatrix& d, StateIndex i, StateIndex j,
                      const Rational& discount = Rational(1));

/// Primal form: discount * max sum_s f(s) (pi(i,s) - pi(j,s)) over f with
/// 0 <= f <= 1 and f(s) - f(t) <= d(s,t) for all ordered pairs.
DeltaValue delta_primal(const Pts& pts, const DistanceMatrix& d, StateIndex i, StateIndex j,
                        const Rational& discount = Rational(1));

/// Optimal couplings per live pair (i < j), as produced by a sweep.
using CouplingMap = std::map<StatePair, Coupling>;

struct DeltaSweep {
  DistanceMatrix values;
  CouplingMap couplings;
};

/// The functional applied at every unordered pair, with the optimal couplings
/// of the live pairs. Pairs are evaluated on up to `workers` threads; the
/// result does not depend on the worker count.
DeltaSweep delta_sweep(const Pts& pts, const DistanceMatrix& d, const Rational& discount = Rational(1),
                       std::size_t workers = 1);

DistanceMatrix apply_delta(const Pts& pts, const DistanceMatrix& d, const Rational& discount = Rational(1),
                           std::size_t workers = 1);

}  // namespace pmetric
