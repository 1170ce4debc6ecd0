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

#include "pmetric/lp.hpp"

#include <stdexcept>
#include <string>

namespace pmetric {

namespace {

using Row = std::vector<Rational>;

// Variable substitution x_k = offset + sum coef * y.
struct Representation {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> terms;
};

class Tableau {
 public:
  Tableau(std::vector<Row> rows, std::vector<std::size_t> basis, std::size_t num_cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), num_cols_(num_cols), allowed_(num_cols, true) {}

  std::size_t num_rows() const { return rows_.size(); }
  const Rational& rhs(std::size_t i) const { return rows_[i][num_cols_]; }
  const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  void forbid(std::size_t col) { allowed_[col] = false; }

  // Installs reduced costs for `cost` (one entry per column).
  void set_objective(const Row& cost) {
    objective_.assign(num_cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < num_cols_; ++j) objective_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) {
        if (!rows_[i][j].is_zero()) objective_[j] -= cb * rows_[i][j];
      }
    }
  }

  /// Current objective value c_B B^-1 b.
  Rational objective_value() const { return -objective_[num_cols_]; }

  enum class Result { Optimal, Unbounded };

  Result minimize() {
    for (;;) {
      // Bland: lowest-index improving column.
      std::size_t entering = num_cols_;
      for (std::size_t j = 0; j < num_cols_; ++j) {
        if (allowed_[j] && objective_[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering == num_cols_) return Result::Optimal;

      std::size_t leaving = rows_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][entering];
        if (a.sign() <= 0) continue;
        Rational ratio = rows_[i][num_cols_] / a;
        if (leaving == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_.size()) return Result::Unbounded;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Row& prow = rows_[r];
    const Rational inv = Rational(1) / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= num_cols_; ++j) {
      if (!prow[j].is_zero()) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](Row& row) {
      if (row[c].is_zero()) return;
      const Rational f = row[c];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    if (!objective_.empty()) eliminate(objective_);
    basis_[r] = c;
  }

  void drop_row(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

 private:
  std::vector<Row> rows_;
  std::vector<std::size_t> basis_;
  std::size_t num_cols_;
  std::vector<bool> allowed_;
  Row objective_;
};

void check_dimensions(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    if (lp.constraints[k].coeffs.size() != n) {
      throw std::invalid_argument("constraint " + std::to_string(k) + " has " +
                                  std::to_string(lp.constraints[k].coeffs.size()) + " coefficients, expected " +
                                  std::to_string(n));
    }
  }
  if (!lp.bounds.empty() && lp.bounds.size() != n) {
    throw std::invalid_argument("bounds given for " + std::to_string(lp.bounds.size()) + " variables, expected " +
                                std::to_string(n));
  }
}

bool satisfies(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::LessEq:
      return lhs <= rhs;
    case Relation::Equal:
      return lhs == rhs;
    case Relation::GreaterEq:
      return lhs >= rhs;
  }
  return false;
}

}  // namespace

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_variables()) return false;
  for (const auto& con : lp.constraints) {
    Rational lhs;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!con.coeffs[k].is_zero()) lhs += con.coeffs[k] * x[k];
    }
    if (!satisfies(lhs, con.relation, con.rhs)) return false;
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    const VariableBound b = lp.bounds.empty() ? VariableBound{} : lp.bounds[k];
    if (b.lower && x[k] < *b.lower) return false;
    if (b.upper && x[k] > *b.upper) return false;
  }
  return true;
}

LpOutcome lp_solve(const LinearProgram& lp) {
  check_dimensions(lp);
  const std::size_t n = lp.num_variables();

  // Shift/split variables so that every internal variable y is >= 0.
  std::vector<Representation> rep(n);
  std::vector<LinearConstraint> rows_in = lp.constraints;
  std::size_t ny = 0;
  std::vector<std::pair<std::size_t, Rational>> upper_caps;  // y_index <= cap
  for (std::size_t k = 0; k < n; ++k) {
    const VariableBound b = lp.bounds.empty() ? VariableBound{} : lp.bounds[k];
    if (b.lower) {
      rep[k].offset = *b.lower;
      rep[k].terms.push_back({ny, 1});
      if (b.upper) upper_caps.push_back({ny, *b.upper - *b.lower});
      ++ny;
    } else if (b.upper) {
      rep[k].offset = *b.upper;
      rep[k].terms.push_back({ny++, -1});
    } else {
      rep[k].terms.push_back({ny++, 1});
      rep[k].terms.push_back({ny++, -1});
    }
  }

  struct StdRow {
    Row coeffs;
    Relation relation;
    Rational rhs;
  };
  std::vector<StdRow> std_rows;
  for (const auto& con : rows_in) {
    StdRow r{Row(ny), con.relation, con.rhs};
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& a = con.coeffs[k];
      if (a.is_zero()) continue;
      r.rhs -= a * rep[k].offset;
      for (auto [y, sgn] : rep[k].terms) r.coeffs[y] += sgn > 0 ? a : -a;
    }
    std_rows.push_back(std::move(r));
  }
  for (auto& [y, cap] : upper_caps) {
    StdRow r{Row(ny), Relation::LessEq, cap};
    r.coeffs[y] = 1;
    std_rows.push_back(std::move(r));
  }
  for (auto& r : std_rows) {
    if (r.rhs.sign() < 0) {
      for (auto& a : r.coeffs) a = -a;
      r.rhs = -r.rhs;
      if (r.relation == Relation::LessEq) {
        r.relation = Relation::GreaterEq;
      } else if (r.relation == Relation::GreaterEq) {
        r.relation = Relation::LessEq;
      }
    }
  }

  const std::size_t m = std_rows.size();
  std::size_t ns = 0, na = 0;
  for (const auto& r : std_rows) {
    if (r.relation != Relation::Equal) ++ns;
    if (r.relation != Relation::LessEq) ++na;
  }
  const std::size_t slack0 = ny, art0 = ny + ns, ncols = ny + ns + na;
  std::vector<Row> rows(m, Row(ncols + 1));
  std::vector<std::size_t> basis(m);
  std::size_t next_slack = slack0, next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t y = 0; y < ny; ++y) rows[i][y] = std_rows[i].coeffs[y];
    rows[i][ncols] = std_rows[i].rhs;
    switch (std_rows[i].relation) {
      case Relation::LessEq:
        rows[i][next_slack] = 1;
        basis[i] = next_slack++;
        break;
      case Relation::GreaterEq:
        rows[i][next_slack++] = -1;
        rows[i][next_art] = 1;
        basis[i] = next_art++;
        break;
      case Relation::Equal:
        rows[i][next_art] = 1;
        basis[i] = next_art++;
        break;
    }
  }

  Tableau tab(std::move(rows), std::move(basis), ncols);
  LpOutcome out;

  if (na > 0) {
    Row phase1(ncols);
    for (std::size_t j = art0; j < ncols; ++j) phase1[j] = 1;
    tab.set_objective(phase1);
    tab.minimize();
    if (tab.objective_value().sign() > 0) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.num_rows(); i-- > 0;) {
      if (tab.basic(i) < art0) continue;
      std::size_t col = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (!tab.at(i, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col < art0) {
        tab.pivot(i, col);
      } else {
        tab.drop_row(i);
      }
    }
    for (std::size_t j = art0; j < ncols; ++j) tab.forbid(j);
  }

  Row cost(ncols);
  Rational constant;
  for (std::size_t k = 0; k < n; ++k) {
    Rational c = lp.sense == Sense::Minimize ? lp.objective[k] : -lp.objective[k];
    if (c.is_zero()) continue;
    constant += c * rep[k].offset;
    for (auto [y, sgn] : rep[k].terms) cost[y] += sgn > 0 ? c : -c;
  }
  tab.set_objective(cost);
  if (tab.minimize() == Tableau::Result::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  Row y(ny);
  for (std::size_t i = 0; i < tab.num_rows(); ++i) {
    if (tab.basic(i) < ny) y[tab.basic(i)] = tab.rhs(i);
  }
  out.solution.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational x = rep[k].offset;
    for (auto [idx, sgn] : rep[k].terms) x += sgn > 0 ? y[idx] : -y[idx];
    out.solution[k] = std::move(x);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!lp.objective[k].is_zero()) out.value += lp.objective[k] * out.solution[k];
  }
  if (!is_feasible(lp, out.solution)) throw std::logic_error("simplex produced an infeasible point");
  out.status = LpStatus::Optimal;
  return out;
}

TransportResult transport_min(const RationalMatrix& cost, const std::vector<Rational>& row_marginal,
                              const std::vector<Rational>& col_marginal) {
  const std::size_t n = cost.size();
  if (row_marginal.size() != n || col_marginal.size() != n) {
    throw std::invalid_argument("marginal length does not match cost matrix");
  }
  Rational row_sum, col_sum;
  for (std::size_t i = 0; i < n; ++i) {
    if (row_marginal[i].sign() < 0 || col_marginal[i].sign() < 0) {
      throw std::invalid_argument("negative marginal entry");
    }
    row_sum += row_marginal[i];
    col_sum += col_marginal[i];
  }
  if (row_sum != Rational(1) || col_sum != Rational(1)) {
    throw std::invalid_argument("marginal sums differ from 1 (rows " + row_sum.str() + ", columns " + col_sum.str() +
                                ")");
  }

  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (!row_marginal[i].is_zero()) rows.push_back(i);
    if (!col_marginal[i].is_zero()) cols.push_back(i);
  }

  TransportResult result;
  result.plan.plan = RationalMatrix(n);
  result.plan.row_marginal = row_marginal;
  result.plan.col_marginal = col_marginal;

  // A point-mass marginal forces the coupling.
  if (rows.size() == 1 || cols.size() == 1) {
    for (std::size_t i : rows) {
      for (std::size_t j : cols) {
        result.plan.plan(i, j) = rows.size() == 1 ? col_marginal[j] : row_marginal[i];
      }
    }
    result.value = coupling_cost(result.plan, cost);
    return result;
  }

  const std::size_t nv = rows.size() * cols.size();
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.objective.resize(nv);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) lp.objective[a * cols.size() + b] = cost(rows[a], cols[b]);
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    LinearConstraint c{Row(nv), Relation::Equal, row_marginal[rows[a]]};
    for (std::size_t b = 0; b < cols.size(); ++b) c.coeffs[a * cols.size() + b] = 1;
    lp.constraints.push_back(std::move(c));
  }
  for (std::size_t b = 0; b < cols.size(); ++b) {
    LinearConstraint c{Row(nv), Relation::Equal, col_marginal[cols[b]]};
    for (std::size_t a = 0; a < rows.size(); ++a) c.coeffs[a * cols.size() + b] = 1;
    lp.constraints.push_back(std::move(c));
  }
  const LpOutcome sol = lp_solve(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("transportation problem not solved to optimality");
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) result.plan.plan(rows[a], cols[b]) = sol.solution[a * cols.size() + b];
  }
  result.value = sol.value;
  return result;
}

}  // namespace pmetric
