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

#include "pmetric/model.hpp"

#include <sstream>

namespace pmetric {

namespace {

std::string one_based(StateIndex s) { return std::to_string(s + 1); }

}  // namespace

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("matrix row " + one_based(i) + " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << '\n';
    os << violations[k].message;
  }
  return os.str();
}

InvalidSystem::InvalidSystem(ValidationReport report)
    : std::invalid_argument(report.summary()), report_(std::move(report)) {}

ValidationReport validate_pts(const RationalMatrix& pi) {
  ValidationReport report;
  const Rational zero(0), one(1);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    Rational sum;
    for (std::size_t j = 0; j < pi.size(); ++j) {
      const Rational& p = pi(i, j);
      if (p < zero || p > one) {
        report.violations.push_back({ViolationKind::EntryRange, {i, j}, p,
                                     "entry (" + one_based(i) + "," + one_based(j) + ") = " + p.str() +
                                         " is outside [0,1]"});
      }
      sum += p;
    }
    if (sum != zero && sum != one) {
      report.violations.push_back(
          {ViolationKind::RowSum, {i}, sum, "row " + one_based(i) + " sums to " + sum.str() + ", expected 0 or 1"});
    }
  }
  return report;
}

Pts::Pts(RationalMatrix pi, std::vector<std::string> labels) : pi_(std::move(pi)), labels_(std::move(labels)) {
  if (pi_.size() == 0) throw std::invalid_argument("a transition system needs at least one state");
  if (!labels_.empty() && labels_.size() != pi_.size()) {
    throw std::invalid_argument("expected " + std::to_string(pi_.size()) + " labels, got " +
                                std::to_string(labels_.size()));
  }
  auto report = validate_pts(pi_);
  if (!report.ok()) throw InvalidSystem(std::move(report));
  live_.resize(pi_.size());
  for (std::size_t i = 0; i < pi_.size(); ++i) {
    Rational sum;
    for (const auto& p : pi_.row(i)) sum += p;
    live_[i] = !sum.is_zero();
  }
}

std::string Pts::label(StateIndex s) const { return labels_.empty() ? "s" + one_based(s) : labels_[s]; }

std::vector<StateKind> classify_states(const Pts& pts) {
  std::vector<StateKind> kinds(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) kinds[i] = pts.is_live(i) ? StateKind::Live : StateKind::Stuck;
  return kinds;
}

UpperPairs::iterator& UpperPairs::iterator::operator++() {
  if (++at_.second >= n_) {
    ++at_.first;
    at_.second = at_.first + 1;
    if (at_.second >= n_) at_ = {n_, n_};
  }
  return *this;
}

UpperPairs::iterator UpperPairs::begin() const {
  if (n_ < 2) return end();
  return {n_, {0, 1}};
}

DistanceMatrix DistanceMatrix::bottom(std::size_t n) {
  DistanceMatrix d(n);
  for (auto p : d.pairs()) d.set(p.first, p.second, Rational(1));
  return d;
}

bool leq(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distance matrices of different sizes");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a(i, j) > b(i, j)) return false;
    }
  }
  return true;
}

ValidationReport validate_pseudometric(const DistanceMatrix& d) {
  ValidationReport report;
  const std::size_t n = d.size();
  const Rational zero(0), one(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!d(i, i).is_zero()) {
      report.violations.push_back({ViolationKind::Diagonal, {i}, d(i, i),
                                   "d(" + one_based(i) + "," + one_based(i) + ") = " + d(i, i).str() + " is not 0"});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) < zero || d(i, j) > one) {
        report.violations.push_back({ViolationKind::EntryRange, {i, j}, d(i, j),
                                     "d(" + one_based(i) + "," + one_based(j) + ") = " + d(i, j).str() +
                                         " is outside [0,1]"});
      }
      if (i < j && d(i, j) != d(j, i)) {
        report.violations.push_back({ViolationKind::Asymmetric, {i, j}, d(i, j) - d(j, i),
                                     "d(" + one_based(i) + "," + one_based(j) + ") != d(" + one_based(j) + "," +
                                         one_based(i) + ")"});
      }
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Rational slack = d(h, i) + d(i, j) - d(h, j);
        if (slack.sign() < 0) {
          report.violations.push_back({ViolationKind::Triangle, {h, i, j}, -slack,
                                       "triangle (" + one_based(h) + "," + one_based(i) + "," + one_based(j) +
                                           "): d(" + one_based(h) + "," + one_based(j) + ") = " + d(h, j).str() +
                                           " > " + (d(h, i) + d(i, j)).str()});
        }
      }
    }
  }
  return report;
}

DistanceMatrix metric_closure(DistanceMatrix d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational via = d(i, k) + d(k, j);
        if (via < d(i, j)) d.set(i, j, via);
      }
    }
  }
  return d;
}

ValidationReport validate_coupling(const Coupling& c) {
  ValidationReport report;
  const std::size_t n = c.plan.size();
  if (c.row_marginal.size() != n || c.col_marginal.size() != n) {
    report.violations.push_back({ViolationKind::Shape, {}, Rational(0), "marginal length does not match plan size"});
    return report;
  }
  std::vector<Rational> rows(n), cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& m = c.plan(i, j);
      if (m.sign() < 0) {
        report.violations.push_back({ViolationKind::Negative, {i, j}, m,
                                     "mu(" + one_based(i) + "," + one_based(j) + ") = " + m.str() + " is negative"});
      }
      rows[i] += m;
      cols[j] += m;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i] != c.row_marginal[i]) {
      report.violations.push_back({ViolationKind::Marginal, {i}, rows[i],
                                   "row " + one_based(i) + " sums to " + rows[i].str() + ", expected " +
                                       c.row_marginal[i].str()});
    }
    if (cols[i] != c.col_marginal[i]) {
      report.violations.push_back({ViolationKind::Marginal, {i}, cols[i],
                                   "column " + one_based(i) + " sums to " + cols[i].str() + ", expected " +
                                       c.col_marginal[i].str()});
    }
  }
  return report;
}

Rational coupling_cost(const Coupling& c, const RationalMatrix& cost) {
  Rational total;
  for (std::size_t i = 0; i < c.plan.size(); ++i) {
    for (std::size_t j = 0; j < c.plan.size(); ++j) {
      if (!c.plan(i, j).is_zero()) total += c.plan(i, j) * cost(i, j);
    }
  }
  return total;
}

}  // namespace pmetric
