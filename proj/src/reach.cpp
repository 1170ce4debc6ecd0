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

#include "pmetric/reach.hpp"

#include <deque>
#include <optional>
#include <stdexcept>

namespace pmetric {

std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < n; ++j) {
        if (!a[col][j].is_zero()) a[r][j] -= f * a[col][j];
      }
      b[r] -= f * b[col];
    }
  }
  return b;
}

TerminationVector termination_probabilities(const Pts& pts) {
  const std::size_t n = pts.size();
  // Backward reachability from stuck states over the support graph.
  std::vector<bool> reaches(n, false);
  std::deque<StateIndex> work;
  for (std::size_t s = 0; s < n; ++s) {
    if (!pts.is_live(s)) {
      reaches[s] = true;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    const StateIndex t = work.front();
    work.pop_front();
    for (std::size_t s = 0; s < n; ++s) {
      if (!reaches[s] && !pts.pi(s, t).is_zero()) {
        reaches[s] = true;
        work.push_back(s);
      }
    }
  }

  TerminationVector tau(n);
  std::vector<std::size_t> unknown_index(n, n);
  std::vector<StateIndex> unknowns;
  for (std::size_t s = 0; s < n; ++s) {
    if (!pts.is_live(s)) {
      tau[s] = 1;
    } else if (reaches[s]) {
      unknown_index[s] = unknowns.size();
      unknowns.push_back(s);
    }
  }
  if (unknowns.empty()) return tau;

  const std::size_t m = unknowns.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  std::vector<Rational> b(m);
  for (std::size_t r = 0; r < m; ++r) {
    const StateIndex s = unknowns[r];
    a[r][r] = 1;
    for (std::size_t t = 0; t < n; ++t) {
      const Rational& p = pts.pi(s, t);
      if (p.is_zero()) continue;
      if (!pts.is_live(t)) {
        b[r] += p;
      } else if (unknown_index[t] != n) {
        a[r][unknown_index[t]] -= p;
      }
    }
  }
  auto x = solve_linear_system(std::move(a), std::move(b));
  if (!x) throw std::logic_error("termination system is singular");
  for (std::size_t r = 0; r < m; ++r) tau[unknowns[r]] = (*x)[r];
  return tau;
}

std::vector<TerminationVector> termination_iterates(const Pts& pts, std::size_t steps) {
  const std::size_t n = pts.size();
  std::vector<TerminationVector> out;
  TerminationVector cur(n);
  out.push_back(cur);
  for (std::size_t k = 1; k < steps; ++k) {
    TerminationVector next(n);
    for (std::size_t s = 0; s < n; ++s) {
      if (!pts.is_live(s)) {
        next[s] = 1;
        continue;
      }
      for (std::size_t t = 0; t < n; ++t) {
        if (!pts.pi(s, t).is_zero()) next[s] += pts.pi(s, t) * cur[t];
      }
    }
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

PartialDistances shortcut_distances(const Pts& pts, const TerminationVector& tau) {
  if (tau.size() != pts.size()) throw std::invalid_argument("termination vector length does not match the system");
  PartialDistances known;
  for (auto p : UpperPairs(pts.size())) {
    const bool live_i = pts.is_live(p.first), live_j = pts.is_live(p.second);
    if (!live_i && !live_j) {
      known[p] = 0;
    } else if (live_i != live_j) {
      known[p] = 1;
    } else if (tau[p.second].is_zero()) {
      known[p] = tau[p.first];
    } else if (tau[p.first].is_zero()) {
      known[p] = tau[p.second];
    }
  }
  return known;
}

}  // namespace pmetric
