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

#include "pmetric/bisim.hpp"
#include "pmetric/delta.hpp"
#include "pmetric/fixpoint.hpp"
#include "support.hpp"

using namespace pmetric;
using namespace pmetric::testing;

namespace {

DistanceMatrix ex1_half() {
  DistanceMatrix d(5);
  d.set(0, 1, q(49, 837));
  for (std::size_t k : {2, 4}) {
    d.set(0, k, q(1, 93));
    d.set(1, k, q(5, 93));
  }
  for (std::size_t i : {0, 1, 2, 4}) d.set(i, 3, q(1, 2));
  return d;
}

}  // namespace

TEST_CASE("iterates from the top") {
  const Pts pts = ex1();
  CHECK(iterate(pts, 1, 0) == DistanceMatrix::top(5));
  const auto d1 = iterate(pts, 1, 1);
  CHECK(d1(0, 1) == q(0));
  CHECK(d1(0, 3) == q(1));
  const auto d2 = iterate(pts, 1, 2);
  CHECK(d2(0, 1) == q(1, 5));
  CHECK(iterate(pts, 1, 3) == apply_delta(pts, d2));
  // d3(1,3) = 2/5 d2(2,3).
  CHECK(iterate(pts, 1, 3)(0, 2) == q(2, 5) * d2(1, 2));
  CHECK(iterate(pts, 1, 3)(0, 2) == q(2, 25));
  CHECK(iterate(pts, 1, 5, 3) == iterate(pts, 1, 5, 1));
}

TEST_CASE("post-fixed checks") {
  const Pts pts = ex1();
  CHECK(is_post_fixed(pts, ex1_distances()).holds);
  CHECK(is_post_fixed(pts, DistanceMatrix::bottom(5)).holds);
  const auto top = is_post_fixed(pts, DistanceMatrix::top(5));
  CHECK_FALSE(top.holds);
  REQUIRE_FALSE(top.violations.empty());
  CHECK(top.violations.front().pair == StatePair{0, 3});
  CHECK(top.violations.front().excess == q(1));
  CHECK(is_post_fixed(pts, ex1_half(), q(1, 2)).holds);
  RationalMatrix bad(5);
  bad(0, 1) = q(1, 2);
  CHECK_THROWS_AS(is_post_fixed(pts, DistanceMatrix(bad)), std::invalid_argument);
}

TEST_CASE("known distances") {
  const auto known = known_distances(ex1(), 1);
  CHECK(known.size() == 9);
  CHECK(known.count({0, 1}) == 0);
  CHECK(known.at({2, 4}) == q(0));
  const auto half = known_distances(ex1(), q(1, 2));
  CHECK(half.at({0, 3}) == q(1, 2));
  CHECK(half.at({2, 4}) == q(0));
  CHECK(half.count({0, 2}) == 0);
}

TEST_CASE("exact solve on the example") {
  const auto one = exact_solve(ex1(), 1, DistanceMatrix::top(5));
  REQUIRE(one.has_value());
  CHECK(*one == ex1_distances());
  // The coupling of (s1,s2) at the fixed point yields the affine recurrence
  // d(1,2) = 1/4 + 5/8 d(1,3).
  CHECK((*one)(0, 1) == q(1, 4) + q(5, 8) * (*one)(0, 2));

  const auto half = exact_solve(ex1(), q(1, 2), DistanceMatrix::top(5));
  REQUIRE(half.has_value());
  CHECK(*half == ex1_half());
  CHECK(apply_delta(ex1(), *half, q(1, 2)) == *half);

  const auto stuck = exact_solve(Pts(RationalMatrix(3)), 1, DistanceMatrix::top(3));
  REQUIRE(stuck.has_value());
  CHECK(*stuck == DistanceMatrix::top(3));
}

TEST_CASE("approximate_all on the example") {
  const auto r = approximate_all(ex1(), 1, q(1, 1000));
  CHECK(r.certified);
  CHECK(r.method == BoundsMethod::ExactSolve);
  CHECK(r.lower == ex1_distances());
  CHECK(r.upper == ex1_distances());
  CHECK(r.gap == q(0));
  CHECK(r.exact.size() == 10);
  CHECK(r.quotient_states == 4);
  CHECK(to_string(r.method) == "exact-solve");

  const auto h = approximate_all(ex1(), q(1, 2), q(1, 1000));
  CHECK(h.certified);
  CHECK(h.upper == ex1_half());

  CHECK_THROWS_AS(approximate_all(ex1(), 1, q(0)), std::invalid_argument);
  CHECK_THROWS_AS(approximate_all(ex1(), q(2), q(1, 10)), std::invalid_argument);
}

TEST_CASE("fully bisimilar systems need no rounds") {
  const Pts loops(RationalMatrix::from_rows({{q(1, 2), q(1, 2), 0}, {0, 0, 1}, {1, 0, 0}}));
  const auto r = approximate_all(loops, 1, q(1, 100));
  CHECK(r.certified);
  CHECK(r.iterations == 0);
  CHECK(r.quotient_states == 1);
  CHECK(r.upper == DistanceMatrix::top(3));
}

TEST_CASE("bounds are sound on random systems") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 2 + k % 5;
    const Pts pts = random_pts(rng, n);
    const Rational discount = k % 2 ? q(1) : q(1 + k % 3, 4);
    const Rational eps(1, 100);
    const auto r = approximate_all(pts, discount, eps);
    CAPTURE(k);
    CHECK(r.certified);
    CHECK(r.gap <= eps);
    CHECK(leq(r.lower, r.upper));
    CHECK(leq(r.lower, r.certificate));
    CHECK(leq(r.certificate, r.upper));
    CHECK(validate_pseudometric(r.certificate).ok());
    CHECK(is_post_fixed(pts, r.certificate, discount).holds);
    // Lower bounds are iterates from the top, so they ascend under Delta.
    CHECK(leq(r.lower, apply_delta(pts, r.lower, discount)));
    for (auto p : r.exact) CHECK(r.lower.at(p) == r.upper.at(p));

    // Working on the quotient does not change the answer.
    FixpointOptions plain;
    plain.use_quotient = false;
    const auto s = approximate_all(pts, discount, eps, plain);
    CHECK(s.certified);
    if (r.gap.is_zero() && s.gap.is_zero()) CHECK(s.upper == r.upper);
    CHECK(leq(s.lower, r.upper));
    CHECK(leq(r.lower, s.upper));
  }
}

TEST_CASE("lower bounds grow monotonically") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 30; ++k) {
    const Pts pts = random_pts(rng, 3 + k % 3);
    DistanceMatrix prev = iterate(pts, 1, 0);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto next = iterate(pts, 1, n);
      CHECK(leq(prev, next));
      prev = next;
    }
  }
}

TEST_CASE("round-down option keeps bounds sound") {
  FixpointOptions options;
  options.round_down_denominator = 64;
  const auto r = approximate_all(ex1(), 1, q(1, 100), options);
  CHECK(r.certified);
  CHECK(r.lower(0, 1) <= q(23, 72));
  CHECK(q(23, 72) <= r.upper(0, 1));
}
