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

#include "pmetric/fixpoint.hpp"

#include <deque>
#include <map>
#include <stdexcept>

#include "pmetric/bisim.hpp"
#include "pmetric/reach.hpp"

namespace pmetric {

namespace {

// Least solution of d = discount * C d on the unknown pairs, for a fixed
// coupling per unknown pair. Pairs from which the coupling chain cannot leave
// the unknown set get 0.
DistanceMatrix solve_for_couplings(std::size_t n, const Rational& discount, const PartialDistances& known,
                                   const std::vector<StatePair>& unknown, const CouplingMap& couplings) {
  const std::size_t m = unknown.size();
  std::map<StatePair, std::size_t> index;
  for (std::size_t k = 0; k < m; ++k) index.emplace(unknown[k], k);

  std::vector<std::map<std::size_t, Rational>> coeff(m);
  std::vector<Rational> rhs(m);
  std::vector<Rational> inner_mass(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Coupling& c = couplings.at(unknown[k]);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Rational& mu = c.plan(a, b);
        if (mu.is_zero() || a == b) continue;
        const auto q = StatePair::canonical(a, b);
        if (auto it = index.find(q); it != index.end()) {
          coeff[k][it->second] += discount * mu;
          inner_mass[k] += discount * mu;
        } else {
          rhs[k] += discount * mu * known.at(q);
        }
      }
    }
  }

  // Backward reachability from leaking pairs.
  std::vector<std::vector<std::size_t>> preds(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto& [q, w] : coeff[k]) preds[q].push_back(k);
  }
  std::vector<bool> escapes(m, false);
  std::deque<std::size_t> work;
  for (std::size_t k = 0; k < m; ++k) {
    if (inner_mass[k] < Rational(1)) {
      escapes[k] = true;
      work.push_back(k);
    }
  }
  while (!work.empty()) {
    const std::size_t q = work.front();
    work.pop_front();
    for (std::size_t p : preds[q]) {
      if (!escapes[p]) {
        escapes[p] = true;
        work.push_back(p);
      }
    }
  }

  std::vector<std::size_t> live_rows;
  std::vector<std::size_t> pos(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    if (escapes[k]) {
      pos[k] = live_rows.size();
      live_rows.push_back(k);
    }
  }
  const std::size_t r = live_rows.size();
  std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
  std::vector<Rational> b(r);
  for (std::size_t row = 0; row < r; ++row) {
    const std::size_t k = live_rows[row];
    a[row][row] += 1;
    for (const auto& [q, w] : coeff[k]) {
      if (pos[q] != m) a[row][pos[q]] -= w;
    }
    b[row] = rhs[k];
  }
  auto x = solve_linear_system(std::move(a), std::move(b));
  if (!x) throw std::logic_error("coupling system is singular after removing closed classes");

  DistanceMatrix u(n);
  for (const auto& [p, v] : known) u.set(p.first, p.second, v);
  for (std::size_t row = 0; row < r; ++row) {
    const auto p = unknown[live_rows[row]];
    u.set(p.first, p.second, (*x)[row]);
  }
  return u;
}

DistanceMatrix inflate(const DistanceMatrix& d, const Rational& c) {
  DistanceMatrix out = d;
  for (auto p : d.pairs()) out.set(p.first, p.second, min(Rational(1), d.at(p) + c));
  return out;
}

Rational max_gap(const DistanceMatrix& lower, const DistanceMatrix& upper) {
  Rational g;
  for (auto p : lower.pairs()) g = max(g, upper.at(p) - lower.at(p));
  return g;
}

DistanceMatrix lift(const DistanceMatrix& d, const std::vector<std::size_t>& projection) {
  DistanceMatrix out(projection.size());
  for (auto p : out.pairs()) {
    const auto a = projection[p.first], b = projection[p.second];
    if (a != b) out.set(p.first, p.second, d(a, b));
  }
  return out;
}

}  // namespace

std::string to_string(BoundsMethod m) {
  switch (m) {
    case BoundsMethod::ExactSolve:
      return "exact-solve";
    case BoundsMethod::Inflation:
      return "inflation";
    case BoundsMethod::Uncertified:
      return "uncertified";
  }
  return "?";
}

DistanceMatrix iterate(const Pts& pts, const Rational& discount, std::size_t n, std::size_t workers) {
  check_discount(discount);
  DistanceMatrix d = DistanceMatrix::top(pts.size());
  for (std::size_t k = 0; k < n; ++k) d = apply_delta(pts, d, discount, workers);
  return d;
}

PostFixedCheck is_post_fixed(const Pts& pts, const DistanceMatrix& d, const Rational& discount, std::size_t workers) {
  const auto report = validate_pseudometric(d);
  if (!report.ok()) throw std::invalid_argument("not a 1-bounded pseudometric: " + report.summary());
  const DistanceMatrix image = apply_delta(pts, d, discount, workers);
  PostFixedCheck check;
  for (auto p : d.pairs()) {
    if (image.at(p) > d.at(p)) check.violations.push_back({p, image.at(p) - d.at(p)});
  }
  check.holds = check.violations.empty();
  return check;
}

PartialDistances known_distances(const Pts& pts, const Rational& discount) {
  check_discount(discount);
  PartialDistances known;
  if (discount == Rational(1)) {
    known = shortcut_distances(pts, termination_probabilities(pts));
  } else {
    for (auto p : UpperPairs(pts.size())) {
      switch (classify_pair(pts, p.first, p.second)) {
        case PairCase::BothStuck:
          known[p] = 0;
          break;
        case PairCase::Mixed:
          known[p] = discount;
          break;
        case PairCase::BothLive:
          break;
      }
    }
  }
  const Partition part = bisimilarity_partition(pts);
  for (const auto& block : part.blocks()) {
    for (std::size_t a = 0; a < block.size(); ++a) {
      for (std::size_t b = a + 1; b < block.size(); ++b) known[StatePair::canonical(block[a], block[b])] = 0;
    }
  }
  return known;
}

std::optional<DistanceMatrix> exact_solve(const Pts& pts, const Rational& discount, const DistanceMatrix& seed,
                                          const ExactSolveOptions& options) {
  check_discount(discount);
  if (seed.size() != pts.size()) throw std::invalid_argument("seed size does not match the system");
  const std::size_t n = pts.size();
  const PartialDistances known = known_distances(pts, discount);
  std::vector<StatePair> unknown;
  for (auto p : UpperPairs(n)) {
    if (!known.contains(p)) unknown.push_back(p);
  }

  CouplingMap couplings;
  {
    auto sweep = delta_sweep(pts, seed, discount, options.workers);
    for (auto p : unknown) couplings.emplace(p, std::move(sweep.couplings.at(p)));
  }

  const Partition part = bisimilarity_partition(pts);
  for (std::size_t round = 0; round < options.max_policy_rounds; ++round) {
    const DistanceMatrix u = solve_for_couplings(n, discount, known, unknown, couplings);
    auto sweep = delta_sweep(pts, u, discount, options.workers);
    if (sweep.values == u) {
      if (!validate_pseudometric(u).ok()) return std::nullopt;
      for (auto p : u.pairs()) {
        if (part.same_block(p.first, p.second) && !u.at(p).is_zero()) return std::nullopt;
      }
      return u;
    }
    bool improved = false;
    for (auto p : unknown) {
      const Rational current = discount * coupling_cost(couplings.at(p), u.raw());
      if (sweep.values.at(p) < current) {
        couplings.at(p) = std::move(sweep.couplings.at(p));
        improved = true;
      }
    }
    if (!improved) return std::nullopt;
  }
  return std::nullopt;
}

BoundsResult approximate_all(const Pts& pts, const Rational& discount, const Rational& epsilon,
                             const FixpointOptions& options) {
  check_discount(discount);
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");

  std::optional<QuotientResult> q;
  if (options.use_quotient) q = quotient(pts, bisimilarity_partition(pts));
  const Pts& work = q ? q->quotient : pts;
  const std::size_t n = work.size();
  const std::size_t budget = options.max_rounds ? options.max_rounds : 10 * n * n;
  const ExactSolveOptions solve_options{options.workers, options.max_policy_rounds};

  BoundsResult result;
  result.quotient_states = n;
  DistanceMatrix lower = DistanceMatrix::top(n);
  DistanceMatrix upper = DistanceMatrix::bottom(n);
  DistanceMatrix certificate = upper;
  if (!is_post_fixed(work, certificate, discount, options.workers).holds) {
    throw std::logic_error("discrete metric is not post-fixed");
  }

  for (std::size_t round = 0;; ++round) {
    ++result.exact_solve_attempts;
    if (auto sol = exact_solve(work, discount, lower, solve_options)) {
      lower = *sol;
      upper = *sol;
      certificate = *sol;
      result.method = BoundsMethod::ExactSolve;
      result.certified = true;
      break;
    }
    bool done = false;
    for (Rational c = epsilon / 2, k = 0; k < 3; c /= 2, k += 1) {
      DistanceMatrix candidate = inflate(lower, c);
      if (is_post_fixed(work, candidate, discount, options.workers).holds) {
        upper = candidate;
        certificate = std::move(candidate);
        result.method = BoundsMethod::Inflation;
        result.certified = true;
        done = true;
        break;
      }
    }
    if (done || round >= budget) break;
    lower = apply_delta(work, lower, discount, options.workers);
    if (options.round_down_denominator) {
      const mpz_class den(*options.round_down_denominator);
      DistanceMatrix rounded(n);
      for (auto p : lower.pairs()) rounded.set(p.first, p.second, lower.at(p).floor_to(den));
      lower = metric_closure(std::move(rounded));
    }
    ++result.iterations;
  }

  if (!result.certified) {
    // Best verified inflation above the final iterate, coarse to fine.
    for (Rational c = Rational(1, 2); c > epsilon; c /= 2) {
      DistanceMatrix candidate = inflate(lower, c);
      if (!is_post_fixed(work, candidate, discount, options.workers).holds) break;
      upper = candidate;
      certificate = std::move(candidate);
    }
    result.notes = "iteration budget exhausted without a certificate within epsilon";
  }
  if (result.method != BoundsMethod::ExactSolve) {
    if (!result.notes.empty()) result.notes += "; ";
    result.notes += "exact_solve did not stabilize in " + std::to_string(result.exact_solve_attempts) + " attempts";
  }

  if (q) {
    lower = lift(lower, q->projection);
    upper = lift(upper, q->projection);
    certificate = lift(certificate, q->projection);
  }
  result.gap = max_gap(lower, upper);
  for (auto p : lower.pairs()) {
    if (lower.at(p) == upper.at(p)) result.exact.push_back(p);
  }
  result.lower = std::move(lower);
  result.upper = std::move(upper);
  result.certificate = std::move(certificate);
  return result;
}

}  // namespace pmetric
