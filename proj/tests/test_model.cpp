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

#include "pmetric/model.hpp"
#include "support.hpp"

using namespace pmetric;
using namespace pmetric::testing;

TEST_CASE("validate_pts") {
  CHECK(validate_pts(ex1().matrix()).ok());
  CHECK(validate_pts(RationalMatrix(1)).ok());

  const auto half = RationalMatrix::from_rows({{0, q(1, 2)}, {0, 1}});
  const auto report = validate_pts(half);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::RowSum);
  CHECK(report.violations[0].states == std::vector<StateIndex>{0});
  CHECK(report.violations[0].value == q(1, 2));
  CHECK(report.violations[0].message == "row 1 sums to 1/2, expected 0 or 1");

  const auto range = RationalMatrix::from_rows({{q(3, 2), q(-1, 2)}, {0, 0}});
  const auto r2 = validate_pts(range);
  CHECK(r2.violations.size() == 2);
  CHECK(r2.violations[0].kind == ViolationKind::EntryRange);
  CHECK_THROWS_AS(Pts{half}, InvalidSystem);
}

TEST_CASE("classify_states") {
  using K = StateKind;
  CHECK(classify_states(ex1()) == std::vector<K>{K::Live, K::Live, K::Live, K::Stuck, K::Live});
  CHECK(classify_states(Pts(RationalMatrix(1))) == std::vector<K>{K::Stuck});
  CHECK(classify_states(Pts(RationalMatrix::from_rows({{1}}))) == std::vector<K>{K::Live});
}

TEST_CASE("classify_states matches row sums on random systems") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Pts pts = random_pts(rng, 2 + k % 5);
    const auto kinds = classify_states(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Rational sum;
      for (const auto& p : pts.row(i)) sum += p;
      CHECK((sum == q(1)) == (kinds[i] == StateKind::Live));
      CHECK((sum == q(0)) == (kinds[i] == StateKind::Stuck));
    }
  }
}

TEST_CASE("labels") {
  const Pts named(RationalMatrix(2), {"a", "b"});
  CHECK(named.label(1) == "b");
  CHECK(ex1().label(3) == "s4");
  CHECK_THROWS_AS(Pts(RationalMatrix(2), {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(Pts(RationalMatrix(0)), std::invalid_argument);
}

TEST_CASE("upper pairs enumerate i < j once") {
  std::vector<StatePair> seen;
  for (auto p : UpperPairs(4)) seen.push_back(p);
  CHECK(seen.size() == 6);
  CHECK(seen.front() == StatePair{0, 1});
  CHECK(seen.back() == StatePair{2, 3});
  CHECK(UpperPairs(1).begin() == UpperPairs(1).end());
  CHECK(UpperPairs(5).count() == 10);
}

TEST_CASE("validate_pseudometric") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(validate_pseudometric(DistanceMatrix::top(n)).ok());
    CHECK(validate_pseudometric(DistanceMatrix::bottom(n)).ok());
    RationalMatrix raw = DistanceMatrix::bottom(n).raw();
    raw(n - 1, n - 1) = q(1, 7);
    const auto report = validate_pseudometric(DistanceMatrix(raw));
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().kind == ViolationKind::Diagonal);
  }

  DistanceMatrix d(3);
  d.set(0, 2, 1);
  d.set(0, 1, q(1, 4));
  d.set(1, 2, q(1, 4));
  const auto report = validate_pseudometric(d);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().kind == ViolationKind::Triangle);
  CHECK(report.violations.front().states == std::vector<StateIndex>{0, 1, 2});

  RationalMatrix asym(2);
  asym(0, 1) = q(1, 2);
  CHECK(validate_pseudometric(DistanceMatrix(asym)).violations.front().kind == ViolationKind::Asymmetric);
  CHECK(validate_pseudometric(ex1_distances()).ok());
}

TEST_CASE("metric_closure never increases and yields a pseudometric") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 5;
    DistanceMatrix d(n);
    for (auto p : d.pairs()) d.set(p.first, p.second, q(static_cast<long>(rng() % 9), 8));
    const DistanceMatrix c = metric_closure(d);
    CHECK(leq(c, d));
    CHECK(validate_pseudometric(c).ok());
    CHECK(metric_closure(c) == c);
  }
}

TEST_CASE("coupling validation and cost") {
  Coupling c{RationalMatrix::from_rows({{q(1, 2), 0}, {0, q(1, 2)}}), {q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}};
  CHECK(validate_coupling(c).ok());
  CHECK(coupling_cost(c, DistanceMatrix::bottom(2).raw()) == q(0));
  c.plan(0, 1) = q(-1, 4);
  const auto report = validate_coupling(c);
  CHECK_FALSE(report.ok());
  CHECK(report.violations.front().kind == ViolationKind::Negative);
}
