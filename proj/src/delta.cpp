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

#include "pmetric/delta.hpp"

#include <stdexcept>

#include "parallel.hpp"

namespace pmetric {

namespace {

std::vector<Rational> row_vector(const Pts& pts, StateIndex s) {
  auto r = pts.row(s);
  return {r.begin(), r.end()};
}

DeltaValue trivial_case(PairCase c, const Rational& discount) {
  DeltaValue v;
  v.pair_case = c;
  v.value = c == PairCase::Mixed ? discount : Rational(0);
  return v;
}

void check_inputs(const Pts& pts, const DistanceMatrix& d, StateIndex i, StateIndex j) {
  if (d.size() != pts.size()) throw std::invalid_argument("distance matrix size does not match the system");
  if (i >= pts.size() || j >= pts.size()) throw std::invalid_argument("state index out of range");
}

}  // namespace

PairCase classify_pair(const Pts& pts, StateIndex i, StateIndex j) {
  const bool li = pts.is_live(i), lj = pts.is_live(j);
  if (li && lj) return PairCase::BothLive;
  if (!li && !lj) return PairCase::BothStuck;
  return PairCase::Mixed;
}

void check_discount(const Rational& discount) {
  if (discount.sign() <= 0 || discount > Rational(1)) {
    throw std::invalid_argument("discount factor " + discount.str() + " is outside (0,1]");
  }
}

DeltaValue delta_dual(const Pts& pts, const DistanceMatrix& d, StateIndex i, StateIndex j, const Rational& discount) {
  check_discount(discount);
  check_inputs(pts, d, i, j);
  const PairCase c = classify_pair(pts, i, j);
  if (c != PairCase::BothLive) return trivial_case(c, discount);
  auto t = transport_min(d.raw(), row_vector(pts, j), row_vector(pts, i));
  DeltaValue v;
  v.value = discount * t.value;
  v.witness = std::move(t.plan);
  return v;
}

DeltaValue delta_primal(const Pts& pts, const DistanceMatrix& d, StateIndex i, StateIndex j,
                        const Rational& discount) {
  check_discount(discount);
  check_inputs(pts, d, i, j);
  const PairCase c = classify_pair(pts, i, j);
  if (c != PairCase::BothLive) return trivial_case(c, discount);

  const std::size_t n = pts.size();
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.objective.resize(n);
  for (std::size_t s = 0; s < n; ++s) lp.objective[s] = pts.pi(i, s) - pts.pi(j, s);
  lp.bounds.assign(n, VariableBound{Rational(0), Rational(1)});
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      LinearConstraint con{std::vector<Rational>(n), Relation::LessEq, d(s, t)};
      con.coeffs[s] = 1;
      con.coeffs[t] = -1;
      lp.constraints.push_back(std::move(con));
    }
  }
  auto sol = lp_solve(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("primal Kantorovich program not solved to optimality");
  DeltaValue v;
  v.value = discount * sol.value;
  v.witness = std::move(sol.solution);
  return v;
}

DeltaSweep delta_sweep(const Pts& pts, const DistanceMatrix& d, const Rational& discount, std::size_t workers) {
  check_discount(discount);
  if (d.size() != pts.size()) throw std::invalid_argument("distance matrix size does not match the system");
  const std::vector<StatePair> pairs(d.pairs().begin(), d.pairs().end());
  std::vector<DeltaValue> results(pairs.size());
  detail::parallel_for(pairs.size(), workers,
                       [&](std::size_t k) { results[k] = delta_dual(pts, d, pairs[k].first, pairs[k].second, discount); });
  DeltaSweep sweep{DistanceMatrix(pts.size()), {}};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    sweep.values.set(pairs[k].first, pairs[k].second, results[k].value);
    if (auto* c = std::get_if<Coupling>(&results[k].witness)) sweep.couplings.emplace(pairs[k], std::move(*c));
  }
  return sweep;
}

DistanceMatrix apply_delta(const Pts& pts, const DistanceMatrix& d, const Rational& discount, std::size_t workers) {
  return delta_sweep(pts, d, discount, workers).values;
}

}  // namespace pmetric
