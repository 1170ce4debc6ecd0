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
#include "pmetric/fixpoint.hpp"
#include "pmetric/logic.hpp"
#include "support.hpp"

using namespace pmetric;
using namespace pmetric::testing;

namespace {

Valuation ones(std::size_t n) { return Valuation(n, q(1)); }

std::string parse_error(std::string_view text) {
  try {
    parse_formula(text);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("basic interpretations on the example") {
  const Pts pts = ex1();
  const auto t = Formula::truth();
  CHECK(interpret(pts, t) == ones(5));
  CHECK(interpret(pts, Formula::negation(t)) == Valuation(5, q(0)));
  CHECK(interpret(pts, Formula::diamond(t)) == Valuation{1, 1, 1, 0, 1});
  CHECK(interpret(pts, Formula::diamond(t), q(1, 3)) == Valuation{q(1, 3), q(1, 3), q(1, 3), 0, q(1, 3)});

  const auto dd = interpret(pts, parse_formula("<> <> true"));
  CHECK(dd[1] == q(4, 5));
  CHECK(dd == step(pts, step(pts, ones(5), 1), 1));

  const auto minus = interpret(pts, parse_formula("<> true - 1/4"));
  CHECK(minus == Valuation{q(3, 4), q(3, 4), q(3, 4), 0, q(3, 4)});
}

TEST_CASE("depth") {
  CHECK(depth(Formula::truth()) == 0);
  CHECK(depth(parse_formula("<> (<> true & ! <> <> true)")) == 3);
  CHECK(depth(parse_formula("(<> true - 1/2) & true")) == 1);
}

TEST_CASE("logical lower bounds") {
  const Pts pts = ex1();
  const auto d = Formula::diamond(Formula::truth());
  CHECK(logical_lower_bound(pts, {d}, 2, 3) == q(1));
  CHECK(logical_lower_bound(pts, {Formula::truth()}, 2, 3) == q(0));
  CHECK(logical_lower_bound(pts, {Formula::truth(), d}, 2, 3, q(1, 2)) == q(1, 2));
  CHECK_THROWS_AS(logical_lower_bound(pts, {}, 0, 1), std::invalid_argument);
}

TEST_CASE("parsing") {
  const auto f = parse_formula("<>!<>true&true-1/2");
  CHECK(f.str() == "(<> ! <> true & (true - 1/2))");
  CHECK(parse_formula(f.str()) == f);
  CHECK(parse_formula("(true)") == Formula::truth());
  CHECK(parse_formula("true - 1/2 - 1/4") == Formula::minus(Formula::minus(Formula::truth(), q(1, 2)), q(1, 4)));
  for (const char* bad : {"", "<>", "true &", "(true", "true)", "true - 3/2", "true - 0.5", "false"}) {
    CAPTURE(bad);
    CHECK(parse_error(bad).rfind("formula position ", 0) == 0);
  }
  CHECK_THROWS_AS(Formula::minus(Formula::truth(), q(-1, 2)), std::invalid_argument);
}

TEST_CASE("random formulas") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto f = random_formula(seed, 3);
    CHECK(f == random_formula(seed, 3));
    CHECK(depth(f) <= 3);
    CHECK(parse_formula(f.str()) == f);
  }
  const auto& grid = constant_grid();
  CHECK(grid.front() == q(0));
  CHECK(grid.back() == q(1));
  CHECK(std::find(grid.begin(), grid.end(), q(3, 7)) != grid.end());
  CHECK(std::is_sorted(grid.begin(), grid.end()));
}

TEST_CASE("semantic properties on random systems") {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 40; ++k) {
    std::vector<std::size_t> proj;
    const std::size_t n = 3 + k % 4;
    const Pts pts = random_lumpable_pts(rng, n, 2 + k % 2, &proj);
    const Rational discount = k % 2 ? q(1) : q(2, 3);
    const auto bounds = approximate_all(pts, discount, q(1, 1000));
    const auto part = bisimilarity_partition(pts);
    for (std::uint64_t s = 0; s < 25; ++s) {
      const auto f = random_formula(1000 * k + s, 1 + s % 4);
      const auto v = interpret(pts, f, discount);
      CHECK(interpret(pts, Formula::negation(Formula::negation(f)), discount) == v);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(q(0) <= v[i]);
        CHECK(v[i] <= q(1));
        for (std::size_t j = 0; j < n; ++j) {
          if (part.same_block(i, j)) CHECK(v[i] == v[j]);
          CHECK((v[i] - v[j]).abs() <= bounds.upper(i, j));
        }
      }
    }
    // A chain of k diamonds is bounded by discount^k.
    Formula chain = Formula::truth();
    Rational cap(1);
    for (int d = 0; d < 4; ++d) {
      chain = Formula::diamond(chain);
      cap *= discount;
      for (const auto& x : interpret(pts, chain, discount)) CHECK(x <= cap);
    }
  }
}
