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

#include "pmetric/encode.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "pmetric/delta.hpp"
#include "pmetric/lp.hpp"

namespace pmetric {

FoFormula build_pseudo(std::size_t n) {
  std::vector<FoFormula> parts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      parts.push_back(FoFormula::between(Rational(0), Var::d(i, j), Rational(1), Origin::Pseudo));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(FoFormula::atom(Var::d(i, i), Rel::Eq, Rational(0), Origin::Pseudo));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      parts.push_back(FoFormula::atom(Var::d(i, j), Rel::Eq, Var::d(j, i), Origin::Pseudo));
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        parts.push_back(
            FoFormula::atom(Var::d(h, j), Rel::Le, Polynomial(Var::d(h, i)) + Var::d(i, j), Origin::Pseudo));
      }
    }
  }
  return FoFormula::conj(std::move(parts));
}

FoFormula build_post_fixed(const Pts& pts, const Rational& discount) {
  check_discount(discount);
  const std::size_t n = pts.size();
  std::vector<FoFormula> parts;
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    for (std::size_t j0 = 0; j0 < n; ++j0) {
      switch (classify_pair(pts, i0, j0)) {
        case PairCase::BothStuck:
          parts.push_back(FoFormula::atom(Rational(0), Rel::Le, Var::d(i0, j0), Origin::PostFixed));
          continue;
        case PairCase::Mixed:
          parts.push_back(FoFormula::atom(discount, Rel::Le, Var::d(i0, j0), Origin::PostFixed));
          continue;
        case PairCase::BothLive:
          break;
      }
      std::vector<Var> mus;
      std::vector<FoFormula> block;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          mus.push_back(Var::mu(i, j, i0, j0));
          block.push_back(FoFormula::between(Rational(0), mus.back(), Rational(1), Origin::PostFixed));
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        Polynomial col;
        for (std::size_t i = 0; i < n; ++i) col += Var::mu(i, j, i0, j0);
        block.push_back(FoFormula::atom(std::move(col), Rel::Eq, pts.pi(i0, j), Origin::PostFixed));
      }
      for (std::size_t i = 0; i < n; ++i) {
        Polynomial row;
        for (std::size_t j = 0; j < n; ++j) row += Var::mu(i, j, i0, j0);
        block.push_back(FoFormula::atom(std::move(row), Rel::Eq, pts.pi(j0, i), Origin::PostFixed));
      }
      Polynomial cost;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) cost += Polynomial(Var::d(i, j)) * Var::mu(i, j, i0, j0);
      }
      block.push_back(
          FoFormula::atom(Polynomial(discount) * cost, Rel::Le, Var::d(i0, j0), Origin::PostFixed));
      parts.push_back(FoFormula::exists(std::move(mus), FoFormula::conj(std::move(block))));
    }
  }
  return FoFormula::conj(std::move(parts));
}

Query build_query(const Pts& pts, StateIndex i0, StateIndex j0, const Rational& bound, const Rational& discount) {
  const std::size_t n = pts.size();
  if (i0 >= n || j0 >= n) throw std::invalid_argument("pair index out of range");
  std::vector<Var> ds;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ds.push_back(Var::d(i, j));
  }
  FoFormula body = FoFormula::conj(
      {build_pseudo(n), build_post_fixed(pts, discount),
       FoFormula::between(Rational(0), Var::d(i0, j0), bound, Origin::Bound)});
  return Query{FoFormula::exists(std::move(ds), std::move(body)), i0, j0, bound, discount, n, false};
}

namespace {

// Variable -> replacement; variables not in the map stay.
using Substitution = std::map<Var, Polynomial>;

Polynomial substitute(const Polynomial& p, const Substitution& s) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term(c);
    for (const auto& v : m) {
      auto it = s.find(v);
      term = term * (it == s.end() ? Polynomial(v) : it->second);
    }
    out += term;
  }
  return out;
}

FoFormula substitute(const FoFormula& f, const Substitution& s) {
  FoFormula out = f;
  for (auto& t : out.terms) t = substitute(t, s);
  for (auto& c : out.children) c = substitute(c, s);
  return out;
}

std::string describe(const FoFormula& f) {
  switch (f.origin) {
    case Origin::Pseudo:
      return "pseudo constraint " + debug_string(f);
    case Origin::PostFixed:
      return "post-fixed constraint " + debug_string(f);
    case Origin::Bound:
      return "bound " + debug_string(f);
  }
  return debug_string(f);
}

// Collects exact linear constraints from a conjunction of atoms over `vars`.
void linear_constraints(const FoFormula& f, const std::map<Var, std::size_t>& index, LinearProgram& lp) {
  auto add = [&](const Polynomial& lhs, Relation rel, const Polynomial& rhs) {
    const Polynomial diff = lhs - rhs;
    if (diff.degree() > 1) throw std::invalid_argument("coupling block is not linear: " + debug_string(f));
    LinearConstraint c{std::vector<Rational>(index.size()), rel, -diff.constant()};
    for (const auto& [m, coeff] : diff.terms()) {
      if (!m.empty()) c.coeffs[index.at(m.front())] = coeff;
    }
    lp.constraints.push_back(std::move(c));
  };
  switch (f.kind) {
    case FoFormula::Kind::Const:
      if (!f.value) lp.constraints.push_back({std::vector<Rational>(index.size()), Relation::LessEq, Rational(-1)});
      return;
    case FoFormula::Kind::Between:
      add(f.terms[0], Relation::LessEq, f.terms[1]);
      add(f.terms[1], Relation::LessEq, f.terms[2]);
      return;
    case FoFormula::Kind::Atom:
      switch (f.rel) {
        case Rel::Le:
          add(f.terms[0], Relation::LessEq, f.terms[1]);
          return;
        case Rel::Eq:
          add(f.terms[0], Relation::Equal, f.terms[1]);
          return;
        case Rel::Ge:
          add(f.terms[0], Relation::GreaterEq, f.terms[1]);
          return;
        case Rel::Lt:
        case Rel::Gt:
          throw std::invalid_argument("strict inequality in a coupling block");
      }
      return;
    case FoFormula::Kind::And:
      for (const auto& c : f.children) linear_constraints(c, index, lp);
      return;
    case FoFormula::Kind::Or:
    case FoFormula::Kind::Exists:
      throw std::invalid_argument("unsupported connective inside a coupling block");
  }
}

// Decides a formula whose only variables are existentially bound and occur
// linearly in conjunctive blocks.
bool decide_ground(const FoFormula& f) {
  switch (f.kind) {
    case FoFormula::Kind::Const:
      return f.value;
    case FoFormula::Kind::Atom:
    case FoFormula::Kind::Between:
      for (const auto& t : f.terms) {
        if (!t.is_constant()) throw std::invalid_argument("free variable in " + debug_string(f));
      }
      if (f.kind == FoFormula::Kind::Atom) return holds(f.terms[0].constant(), f.rel, f.terms[1].constant());
      return f.terms[0].constant() <= f.terms[1].constant() && f.terms[1].constant() <= f.terms[2].constant();
    case FoFormula::Kind::And:
      return std::all_of(f.children.begin(), f.children.end(), decide_ground);
    case FoFormula::Kind::Or:
      return std::any_of(f.children.begin(), f.children.end(), decide_ground);
    case FoFormula::Kind::Exists: {
      const auto vars = free_variables(f.children.front());
      if (vars.empty()) return decide_ground(f.children.front());
      std::map<Var, std::size_t> index;
      for (const auto& v : vars) index.emplace(v, index.size());
      LinearProgram lp;
      lp.objective.assign(index.size(), Rational(0));
      lp.bounds.assign(index.size(), VariableBound::free());
      linear_constraints(f.children.front(), index, lp);
      return lp_solve(lp).status != LpStatus::Infeasible;
    }
  }
  return false;
}

class Simplifier {
 public:
  Simplifier(const PartialDistances& known, const Pts& pts) : pts_(pts) {
    const std::size_t n = pts.size();
    rep_.resize(n);
    std::iota(rep_.begin(), rep_.end(), std::size_t{0});
    for (const auto& [p, v] : known) {
      if (p.first >= n || p.second >= n) throw std::invalid_argument("known distance outside the system");
      if (v.is_zero()) unite(p.first, p.second);
    }
    for (const auto& [p, v] : known) {
      const std::size_t a = find(p.first), b = find(p.second);
      if (a == b) {
        if (!v.is_zero()) {
          throw SimplifyConflict("known distance " + v.str() + " for states " + std::to_string(p.first + 1) + "," +
                                 std::to_string(p.second + 1) + " contradicts a zero distance");
        }
        continue;
      }
      const auto key = StatePair::canonical(a, b);
      auto [it, inserted] = values_.emplace(key, v);
      if (!inserted && it->second != v) {
        throw SimplifyConflict("known distances " + it->second.str() + " and " + v.str() + " for merged pair " +
                               std::to_string(key.first + 1) + "," + std::to_string(key.second + 1));
      }
    }
  }

  FoFormula run(const FoFormula& f) {
    FoFormula g = substitute(f, substitution(f));
    collect_ranges(g);
    return fold(g);
  }

 private:
  std::size_t find(std::size_t a) {
    while (rep_[a] != a) a = rep_[a] = rep_[rep_[a]];
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) rep_[std::max(a, b)] = std::min(a, b);
  }

  Substitution substitution(const FoFormula& f) {
    Substitution s;
    for (const auto& v : occurring_variables(f)) {
      if (v.kind == Var::Kind::D) {
        const std::size_t a = find(v.i), b = find(v.j);
        if (a == b) {
          s.emplace(v, Rational(0));
          continue;
        }
        const auto key = StatePair::canonical(a, b);
        if (auto it = values_.find(key); it != values_.end()) {
          s.emplace(v, it->second);
        } else if (Var::d(key.first, key.second) != v) {
          s.emplace(v, Var::d(key.first, key.second));
        }
      } else if (pts_.pi(v.i0, v.j).is_zero() || pts_.pi(v.j0, v.i).is_zero()) {
        s.emplace(v, Rational(0));
      }
    }
    return s;
  }

  // D variables constrained to [0,1] by a conjunct on a purely conjunctive
  // path; atoms implied by these ranges are dropped.
  void collect_ranges(const FoFormula& f) {
    if (f.kind == FoFormula::Kind::And || f.kind == FoFormula::Kind::Exists) {
      for (const auto& c : f.children) collect_ranges(c);
    } else if (f.kind == FoFormula::Kind::Between && f.terms[0] == Polynomial(Rational(0)) &&
               f.terms[2] == Polynomial(Rational(1)) && f.terms[1].terms().size() == 1) {
      const auto& [m, c] = *f.terms[1].terms().begin();
      if (m.size() == 1 && m.front().kind == Var::Kind::D && c == Rational(1)) ranged_.insert(m.front());
    }
  }

  // Some(value) when lhs - rhs rel 0 is decided by the ranges alone.
  std::optional<bool> decided_by_ranges(const Polynomial& diff, Rel rel) const {
    Rational lo = diff.constant(), hi = diff.constant();
    for (const auto& [m, c] : diff.terms()) {
      if (m.empty()) continue;
      if (m.size() != 1 || !ranged_.contains(m.front())) return std::nullopt;
      (c.sign() < 0 ? lo : hi) += c;
    }
    switch (rel) {
      case Rel::Le:
        if (hi.sign() <= 0) return true;
        if (lo.sign() > 0) return false;
        break;
      case Rel::Lt:
        if (hi.sign() < 0) return true;
        if (lo.sign() >= 0) return false;
        break;
      case Rel::Ge:
        if (lo.sign() >= 0) return true;
        if (hi.sign() < 0) return false;
        break;
      case Rel::Gt:
        if (lo.sign() > 0) return true;
        if (hi.sign() <= 0) return false;
        break;
      case Rel::Eq:
        if (lo.sign() > 0 || hi.sign() < 0) return false;
        break;
    }
    return std::nullopt;
  }

  FoFormula ground_atom(const FoFormula& f, bool value) {
    if (!value && f.origin != Origin::Bound) throw SimplifyConflict("known distances falsify the " + describe(f));
    return FoFormula::constant(value);
  }

  FoFormula fold(const FoFormula& f) {
    switch (f.kind) {
      case FoFormula::Kind::Const:
        return f;
      case FoFormula::Kind::Atom: {
        const Polynomial diff = f.terms[0] - f.terms[1];
        if (diff.is_constant()) return ground_atom(f, holds(diff.constant(), f.rel, Rational(0)));
        if (auto v = decided_by_ranges(diff, f.rel)) return ground_atom(f, *v);
        return f;
      }
      case FoFormula::Kind::Between: {
        const Polynomial lower = f.terms[1] - f.terms[0];
        const Polynomial upper = f.terms[2] - f.terms[1];
        if (lower.is_constant() && upper.is_constant()) {
          return ground_atom(f, lower.constant().sign() >= 0 && upper.constant().sign() >= 0);
        }
        if (lower.is_constant()) {
          if (lower.constant().sign() < 0) return ground_atom(f, false);
          return fold(FoFormula::atom(f.terms[1], Rel::Le, f.terms[2], f.origin));
        }
        if (upper.is_constant()) {
          if (upper.constant().sign() < 0) return ground_atom(f, false);
          return fold(FoFormula::atom(f.terms[0], Rel::Le, f.terms[1], f.origin));
        }
        return f;
      }
      case FoFormula::Kind::And:
      case FoFormula::Kind::Or: {
        const bool is_and = f.kind == FoFormula::Kind::And;
        std::vector<FoFormula> kept;
        std::set<std::string> seen;
        for (const auto& c : f.children) {
          FoFormula g = fold(c);
          if (g.kind == FoFormula::Kind::Const) {
            if (g.value != is_and) return g;
            continue;
          }
          if (seen.insert(debug_string(g)).second) kept.push_back(std::move(g));
        }
        if (kept.empty()) return FoFormula::constant(is_and);
        if (kept.size() == 1) return std::move(kept.front());
        return is_and ? FoFormula::conj(std::move(kept)) : FoFormula::disj(std::move(kept));
      }
      case FoFormula::Kind::Exists: {
        FoFormula body = fold(f.children.front());
        if (body.kind == FoFormula::Kind::Const) return body;
        const auto free = free_variables(body);
        std::vector<Var> bound;
        for (const auto& v : f.bound) {
          if (free.contains(v)) bound.push_back(v);
        }
        // Substitution may have renamed bound d variables onto representatives.
        for (const auto& v : free) {
          if (v.kind == Var::Kind::D && !std::binary_search(bound.begin(), bound.end(), v) &&
              std::any_of(f.bound.begin(), f.bound.end(), [](const Var& b) { return b.kind == Var::Kind::D; })) {
            bound.push_back(v);
          }
        }
        std::sort(bound.begin(), bound.end());
        bound.erase(std::unique(bound.begin(), bound.end()), bound.end());
        if (bound.empty()) return body;
        FoFormula out = FoFormula::exists(bound, std::move(body));
        if (bound.size() == free.size() &&
            std::all_of(bound.begin(), bound.end(), [](const Var& v) { return v.kind == Var::Kind::Mu; })) {
          if (decide_ground(out)) return FoFormula::constant(true);
          throw SimplifyConflict("known distances leave the coupling block of states " +
                                 std::to_string(f.bound.front().i0 + 1) + "," +
                                 std::to_string(f.bound.front().j0 + 1) + " infeasible");
        }
        return out;
      }
    }
    return f;
  }

  const Pts& pts_;
  std::vector<std::size_t> rep_;
  std::map<StatePair, Rational> values_;
  std::set<Var> ranged_;
};

}  // namespace

FoFormula simplify(const FoFormula& f, const PartialDistances& known, const Pts& pts) {
  return Simplifier(known, pts).run(f);
}

Query simplify(const Query& q, const PartialDistances& known, const Pts& pts) {
  Query out = q;
  out.sentence = simplify(q.sentence, known, pts);
  out.simplified = true;
  return out;
}

bool evaluate(const FoFormula& f, const DAssignment& values) {
  Substitution s;
  for (const auto& v : occurring_variables(f)) {
    if (v.kind != Var::Kind::D) continue;
    auto value = values(v.i, v.j);
    if (!value) {
      throw std::invalid_argument("no value for d" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1));
    }
    s.emplace(v, *value);
  }
  return decide_ground(substitute(f, s));
}

// ---------------------------------------------------------------------------
// Emission

std::string variable_name_smtlib(const Var& v) {
  if (v.kind == Var::Kind::D) return "d_" + std::to_string(v.i + 1) + "_" + std::to_string(v.j + 1);
  return "u_" + std::to_string(v.i + 1) + "_" + std::to_string(v.j + 1) + "_p" + std::to_string(v.i0 + 1) + "_" +
         std::to_string(v.j0 + 1);
}

std::string variable_name_mathematica(const Var& v, bool wide) {
  const std::string sep = wide ? "x" : "";
  return (v.kind == Var::Kind::D ? "d" : "u") + std::to_string(v.i + 1) + sep + std::to_string(v.j + 1);
}

namespace {

std::string smt_rational(const Rational& r) {
  const Rational a = r.abs();
  std::string body = a.is_integer() ? a.numerator().get_str() + ".0"
                                    : "(/ " + a.numerator().get_str() + ".0 " + a.denominator().get_str() + ".0)";
  return r.sign() < 0 ? "(- " + body + ")" : body;
}

std::string smt_poly(const Polynomial& p) {
  if (p.terms().empty()) return "0.0";
  std::vector<std::string> parts;
  for (const auto& [m, c] : p.terms()) {
    if (m.empty()) {
      parts.push_back(smt_rational(c));
      continue;
    }
    std::vector<std::string> factors;
    if (c != Rational(1)) factors.push_back(smt_rational(c));
    for (const auto& v : m) factors.push_back(variable_name_smtlib(v));
    if (factors.size() == 1) {
      parts.push_back(factors.front());
    } else {
      std::string s = "(*";
      for (const auto& x : factors) s += " " + x;
      parts.push_back(s + ")");
    }
  }
  if (parts.size() == 1) return parts.front();
  std::string s = "(+";
  for (const auto& x : parts) s += " " + x;
  return s + ")";
}

const char* smt_rel(Rel r) {
  switch (r) {
    case Rel::Le:
      return "<=";
    case Rel::Lt:
      return "<";
    case Rel::Eq:
      return "=";
    case Rel::Ge:
      return ">=";
    case Rel::Gt:
      return ">";
  }
  return "?";
}

std::string smt_formula(const FoFormula& f) {
  switch (f.kind) {
    case FoFormula::Kind::Const:
      return f.value ? "true" : "false";
    case FoFormula::Kind::Atom:
      return std::string("(") + smt_rel(f.rel) + " " + smt_poly(f.terms[0]) + " " + smt_poly(f.terms[1]) + ")";
    case FoFormula::Kind::Between:
      return "(<= " + smt_poly(f.terms[0]) + " " + smt_poly(f.terms[1]) + " " + smt_poly(f.terms[2]) + ")";
    case FoFormula::Kind::And:
    case FoFormula::Kind::Or: {
      std::string s = f.kind == FoFormula::Kind::And ? "(and" : "(or";
      for (const auto& c : f.children) s += " " + smt_formula(c);
      return s + ")";
    }
    case FoFormula::Kind::Exists:
      // Existentials only occur positively; their variables are declared
      // as constants.
      return smt_formula(f.children.front());
  }
  return "";
}

// Top-level conjuncts, looking through outer existentials.
void top_conjuncts(const FoFormula& f, std::vector<const FoFormula*>& out) {
  if (f.kind == FoFormula::Kind::Exists || f.kind == FoFormula::Kind::And) {
    for (const auto& c : f.children) top_conjuncts(c, out);
  } else {
    out.push_back(&f);
  }
}

std::string math_rational(const Rational& r) { return r.str(); }

std::string math_poly(const Polynomial& p, bool wide) {
  if (p.terms().empty()) return "0";
  std::string s;
  auto emit = [&](const Monomial& m, const Rational& c) {
    const bool negative = c.sign() < 0;
    const Rational a = c.abs();
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    std::vector<std::string> factors;
    if (a != Rational(1) || m.empty()) factors.push_back(math_rational(a));
    for (const auto& v : m) factors.push_back(variable_name_mathematica(v, wide));
    for (std::size_t k = 0; k < factors.size(); ++k) s += (k ? " * " : "") + factors[k];
  };
  for (const auto& [m, c] : p.terms()) {
    if (!m.empty()) emit(m, c);
  }
  if (const Rational c = p.constant(); !c.is_zero()) emit({}, c);
  return s;
}

const char* math_rel(Rel r) {
  switch (r) {
    case Rel::Le:
      return "<=";
    case Rel::Lt:
      return "<";
    case Rel::Eq:
      return "==";
    case Rel::Ge:
      return ">=";
    case Rel::Gt:
      return ">";
  }
  return "?";
}

void math_formula(std::ostream& os, const FoFormula& f, bool wide, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (f.kind) {
    case FoFormula::Kind::Const:
      os << (f.value ? "True" : "False");
      return;
    case FoFormula::Kind::Atom:
      os << '(' << math_poly(f.terms[0], wide) << ' ' << math_rel(f.rel) << ' ' << math_poly(f.terms[1], wide) << ')';
      return;
    case FoFormula::Kind::Between:
      os << '(' << math_poly(f.terms[0], wide) << " <= " << math_poly(f.terms[1], wide) << " <= "
         << math_poly(f.terms[2], wide) << ')';
      return;
    case FoFormula::Kind::And:
    case FoFormula::Kind::Or: {
      const char* op = f.kind == FoFormula::Kind::And ? " &&" : " ||";
      for (std::size_t k = 0; k < f.children.size(); ++k) {
        if (k) os << op << '\n' << pad;
        math_formula(os, f.children[k], wide, indent);
      }
      return;
    }
    case FoFormula::Kind::Exists: {
      os << "Exists[";
      if (f.bound.size() == 1) {
        os << variable_name_mathematica(f.bound.front(), wide);
      } else {
        os << '{';
        for (std::size_t k = 0; k < f.bound.size(); ++k) {
          os << (k ? "," : "") << variable_name_mathematica(f.bound[k], wide);
        }
        os << '}';
      }
      os << ",\n" << pad << "  ";
      math_formula(os, f.children.front(), wide, indent + 2);
      os << ']';
      return;
    }
  }
}

}  // namespace

std::string emit_smtlib(const FoFormula& f) {
  std::ostringstream os;
  os << "(set-logic QF_NRA)\n";
  for (const auto& v : occurring_variables(f)) os << "(declare-const " << variable_name_smtlib(v) << " Real)\n";
  std::vector<const FoFormula*> parts;
  top_conjuncts(f, parts);
  for (const auto* p : parts) os << "(assert " << smt_formula(*p) << ")\n";
  os << "(check-sat)\n";
  return os.str();
}

std::string emit_mathematica(const FoFormula& f) {
  bool wide = false;
  for (const auto& v : occurring_variables(f)) wide = wide || v.i >= 9 || v.j >= 9;
  std::ostringstream os;
  os << "Reduce[\n  ";
  math_formula(os, f, wide, 2);
  os << "]\n";
  return os.str();
}

}  // namespace pmetric
