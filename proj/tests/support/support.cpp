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

#include "support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace pmetric::testing {

Pts ex1() {
  return Pts(RationalMatrix::from_rows({{0, q(2, 5), q(3, 5), 0, 0},
                                        {q(7, 10), 0, 0, q(1, 5), q(1, 10)},
                                        {0, 0, 1, 0, 0},
                                        {0, 0, 0, 0, 0},
                                        {0, 0, 0, 0, 1}}));
}

DistanceMatrix ex1_distances() {
  DistanceMatrix d(5);
  d.set(0, 1, q(23, 72));
  d.set(0, 2, q(1, 9));
  d.set(0, 4, q(1, 9));
  d.set(1, 2, q(5, 18));
  d.set(1, 4, q(5, 18));
  d.set(2, 4, 0);
  for (std::size_t i : {0, 1, 2, 4}) d.set(i, 3, 1);
  return d;
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); }

std::vector<Rational> random_distribution(std::mt19937_64& rng, std::size_t n, int max_weight) {
  const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(std::min<std::size_t>(3, n))));
  std::vector<std::size_t> targets(n);
  std::iota(targets.begin(), targets.end(), std::size_t{0});
  for (std::size_t a = 0; a < k; ++a) std::swap(targets[a], targets[a + rng() % (n - a)]);
  std::vector<long> w(k);
  long total = 0;
  for (auto& x : w) total += x = uniform(rng, 1, max_weight);
  std::vector<Rational> row(n);
  for (std::size_t a = 0; a < k; ++a) row[targets[a]] = Rational(w[a], total);
  return row;
}

}  // namespace

Pts random_pts(std::mt19937_64& rng, std::size_t n, int stuck_chance, int max_weight) {
  RationalMatrix pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (uniform(rng, 0, 99) < stuck_chance) continue;
    const auto row = random_distribution(rng, n, max_weight);
    for (std::size_t j = 0; j < n; ++j) pi(i, j) = row[j];
  }
  return Pts(std::move(pi));
}

Pts random_lumpable_pts(std::mt19937_64& rng, std::size_t n, std::size_t m, std::vector<std::size_t>* projection) {
  const Pts base = random_pts(rng, m);
  std::vector<std::size_t> proj(n);
  for (std::size_t s = 0; s < n; ++s) proj[s] = s < m ? s : rng() % m;
  std::shuffle(proj.begin(), proj.end(), rng);
  std::vector<std::vector<std::size_t>> copies(m);
  for (std::size_t s = 0; s < n; ++s) copies[proj[s]].push_back(s);
  RationalMatrix pi(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      const Rational& p = base.pi(proj[s], t);
      if (p.is_zero()) continue;
      // Split p over the copies of t with random positive weights.
      const auto& targets = copies[t];
      std::vector<long> w(targets.size());
      long total = 0;
      for (auto& x : w) total += x = uniform(rng, 1, 3);
      for (std::size_t a = 0; a < targets.size(); ++a) pi(s, targets[a]) = p * Rational(w[a], total);
    }
  }
  if (projection) *projection = proj;
  return Pts(std::move(pi));
}

DistanceMatrix random_pseudometric(std::mt19937_64& rng, std::size_t n) {
  DistanceMatrix d(n);
  for (auto p : d.pairs()) {
    const int den = uniform(rng, 1, 6);
    d.set(p.first, p.second, Rational(uniform(rng, 0, den), den));
  }
  return metric_closure(std::move(d));
}

std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) return std::nullopt;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c].is_zero()) continue;
      const Rational f = a[k][c];
      for (std::size_t j = 0; j < cols; ++j) a[k][j] -= f * a[r][j];
      b[k] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < cols) return std::nullopt;
  for (std::size_t k = r; k < rows; ++k) {
    if (!b[k].is_zero()) return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = b[k];
  return x;
}

Rational transport_by_vertices(const RationalMatrix& cost, const std::vector<Rational>& row,
                               const std::vector<Rational>& col) {
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_zero()) rs.push_back(i);
  }
  for (std::size_t j = 0; j < col.size(); ++j) {
    if (!col[j].is_zero()) cs.push_back(j);
  }
  const std::size_t nv = rs.size() * cs.size();
  const std::size_t basis = rs.size() + cs.size() - 1;
  std::optional<Rational> best;
  std::vector<bool> pick(nv, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(basis), true);
  do {
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < nv; ++v) {
      if (pick[v]) vars.push_back(v);
    }
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t r = 0; r < rs.size(); ++r) {
      std::vector<Rational> eq(vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) eq[k] = vars[k] / cs.size() == r ? 1 : 0;
      a.push_back(eq);
      b.push_back(row[rs[r]]);
    }
    for (std::size_t c = 0; c < cs.size(); ++c) {
      std::vector<Rational> eq(vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) eq[k] = vars[k] % cs.size() == c ? 1 : 0;
      a.push_back(eq);
      b.push_back(col[cs[c]]);
    }
    const auto x = gauss(a, b);
    if (!x || std::any_of(x->begin(), x->end(), [](const Rational& v) { return v.sign() < 0; })) continue;
    Rational value;
    for (std::size_t k = 0; k < vars.size(); ++k) value += (*x)[k] * cost(rs[vars[k] / cs.size()], cs[vars[k] % cs.size()]);
    if (!best || value < *best) best = value;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (!best) throw std::logic_error("no basic feasible coupling found");
  return *best;
}

Rational half_l1(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]).abs();
  return s / 2;
}

std::vector<Rational> step(const Pts& pts, const std::vector<Rational>& v, const Rational& discount) {
  std::vector<Rational> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) out[i] += pts.pi(i, j) * v[j];
    out[i] *= discount;
  }
  return out;
}

std::string data_path(const std::string& name) { return std::string(PMETRIC_DATA_DIR) + "/" + name; }

}  // namespace pmetric::testing
