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

#include <doctest.h>

#include <random>

#include "pmetric/delta.hpp"
#include "pmetric/fixpoint.hpp"
#include "support.hpp"

using namespace pmetric;
using namespace pmetric::testing;

namespace {

std::vector<Rational> row_of(const Pts& pts, StateIndex i) {
  const auto r = pts.row(i);
  return {r.begin(), r.end()};
}

// The functional computed from its definition with the vertex-enumeration
// transport oracle.
Rational delta_oracle(const Pts& pts, const DistanceMatrix& d, StateIndex i, StateIndex j, const Rational& discount) {
  const bool li = pts.is_live(i), lj = pts.is_live(j);
  if (!li && !lj) return 0;
  if (li != lj) return discount;
  return discount * transport_by_vertices(d.raw(), row_of(pts, j), row_of(pts, i));
}

}  // namespace

TEST_CASE("pair classification") {
  CHECK(classify_pair(ex1(), 0, 1) == PairCase::BothLive);
  CHECK(classify_pair(ex1(), 0, 3) == PairCase::Mixed);
  CHECK(classify_pair(ex1(), 3, 3) == PairCase::BothStuck);
}

TEST_CASE("values on the example") {
  const Pts pts = ex1();
  const auto fixed = ex1_distances();
  CHECK(delta_dual(pts, fixed, 1, 2).value == q(5, 18));
  CHECK(delta_dual(pts, fixed, 0, 1).value == q(23, 72));
  CHECK(delta_primal(pts, fixed, 0, 1).value == q(23, 72));
  CHECK(delta_dual(pts, DistanceMatrix::top(5), 0, 3).value == q(1));
  CHECK(delta_dual(pts, DistanceMatrix::top(5), 0, 1).value == q(0));
  CHECK(delta_dual(pts, DistanceMatrix::top(5), 0, 3, q(1, 2)).value == q(1, 2));

  const auto d1 = apply_delta(pts, DistanceMatrix::top(5));
  CHECK(d1(0, 1) == q(0));
  CHECK(d1(1, 3) == q(1));
  const auto d2 = apply_delta(pts, d1);
  CHECK(d2(0, 1) == q(1, 5));
  CHECK(d2(0, 1) == delta_oracle(pts, d1, 0, 1, 1));

  // Undiscounted (3,4) is a mixed pair.
  const auto half = apply_delta(pts, fixed, q(1, 2));
  CHECK(half(2, 3) == q(1, 2));
}

TEST_CASE("dual and primal agree and match the oracle") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 120; ++k) {
    const std::size_t n = 2 + k % 5;
    const Pts pts = random_pts(rng, n);
    const auto d = random_pseudometric(rng, n);
    const Rational discount = k % 3 == 0 ? q(1) : q(1 + k % 4, 5);
    for (auto [i, j] : d.pairs()) {
      const auto dual = delta_dual(pts, d, i, j, discount);
      const auto primal = delta_primal(pts, d, i, j, discount);
      CHECK(dual.value == primal.value);
      CHECK(dual.value == delta_oracle(pts, d, i, j, discount));
      if (dual.pair_case == PairCase::BothLive) {
        const auto& c = std::get<Coupling>(dual.witness);
        CHECK(validate_coupling(c).ok());
        CHECK(c.col_marginal == row_of(pts, i));
        CHECK(c.row_marginal == row_of(pts, j));
        CHECK(discount * coupling_cost(c, d.raw()) == dual.value);
        // The primal witness is nonexpansive, 1-bounded and attains the value.
        const auto& f = std::get<std::vector<Rational>>(primal.witness);
        Rational sum;
        for (std::size_t s = 0; s < n; ++s) {
          CHECK(q(0) <= f[s]);
          CHECK(f[s] <= q(1));
          for (std::size_t t = 0; t < n; ++t) CHECK(f[s] - f[t] <= d(s, t));
          sum += f[s] * (pts.pi(i, s) - pts.pi(j, s));
        }
        CHECK(discount * sum == primal.value);
      } else {
        CHECK(std::holds_alternative<std::monostate>(dual.witness));
      }
      // Swapping the marginals does not change the value.
      CHECK(delta_dual(pts, d, j, i, discount).value == dual.value);
    }
    // The discrete metric gives the total variation distance.
    for (auto [i, j] : d.pairs()) {
      if (pts.is_live(i) && pts.is_live(j)) {
        CHECK(delta_dual(pts, DistanceMatrix::bottom(n), i, j).value == half_l1(pts.row(i), pts.row(j)));
      }
    }
  }
}

TEST_CASE("structural properties of the functional") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 2 + k % 5;
    const Pts pts = random_pts(rng, n);
    const auto d = random_pseudometric(rng, n);
    const auto e = metric_closure([&] {
      DistanceMatrix m = d;
      for (auto p : m.pairs()) m.set(p.first, p.second, min(q(1), d.at(p) + q(1, 1 + rng() % 4)));
      return m;
    }());
    REQUIRE(leq(d, e));
    const auto dd = apply_delta(pts, d);
    CHECK(validate_pseudometric(dd).ok());
    CHECK(leq(dd, apply_delta(pts, e)));
    // Scaling: Delta_c(d) = c * Delta_1(d) on live pairs.
    const auto scaled = apply_delta(pts, d, q(2, 3));
    for (auto p : d.pairs()) {
      if (classify_pair(pts, p.first, p.second) == PairCase::BothLive) CHECK(scaled.at(p) == q(2, 3) * dd.at(p));
    }
    const auto sweep1 = delta_sweep(pts, d, 1, 1);
    const auto sweep4 = delta_sweep(pts, d, 1, 4);
    CHECK(sweep1.values == sweep4.values);
    CHECK(sweep1.values == dd);
    CHECK(sweep1.couplings.size() == sweep4.couplings.size());
    for (const auto& [pair, c] : sweep1.couplings) CHECK(sweep4.couplings.at(pair).plan == c.plan);
  }
}

TEST_CASE("all-stuck systems are at distance zero") {
  const Pts pts(RationalMatrix(4));
  CHECK(apply_delta(pts, DistanceMatrix::bottom(4)) == DistanceMatrix::top(4));
}

TEST_CASE("discount range") {
  CHECK_NOTHROW(check_discount(q(1)));
  CHECK_NOTHROW(check_discount(q(1, 1000)));
  CHECK_THROWS_AS(check_discount(q(0)), std::invalid_argument);
  CHECK_THROWS_AS(check_discount(q(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(apply_delta(ex1(), DistanceMatrix::top(5), q(-1)), std::invalid_argument);
}
