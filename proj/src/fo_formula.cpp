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

#include "pmetric/fo_formula.hpp"

#include <algorithm>
#include <sstream>

namespace pmetric {

Polynomial::Polynomial(Rational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Polynomial::Polynomial(Var v) { terms_.emplace(Monomial{v}, Rational(1)); }

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Polynomial::constant() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Polynomial::degree() const {
  std::size_t deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m.size());
  return deg;
}

std::set<Var> Polynomial::variables() const {
  std::set<Var> vars;
  for (const auto& [m, c] : terms_) vars.insert(m.begin(), m.end());
  return vars;
}

void Polynomial::add_term(Monomial m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

FoFormula FoFormula::constant(bool v) {
  FoFormula f;
  f.kind = Kind::Const;
  f.value = v;
  return f;
}

FoFormula FoFormula::atom(Polynomial lhs, Rel rel, Polynomial rhs, Origin origin) {
  FoFormula f;
  f.kind = Kind::Atom;
  f.terms = {std::move(lhs), std::move(rhs)};
  f.rel = rel;
  f.origin = origin;
  return f;
}

FoFormula FoFormula::between(Polynomial lo, Polynomial t, Polynomial hi, Origin origin) {
  FoFormula f;
  f.kind = Kind::Between;
  f.terms = {std::move(lo), std::move(t), std::move(hi)};
  f.origin = origin;
  return f;
}

FoFormula FoFormula::conj(std::vector<FoFormula> parts) {
  FoFormula f;
  f.kind = Kind::And;
  for (auto& p : parts) {
    if (p.kind == Kind::And) {
      for (auto& c : p.children) f.children.push_back(std::move(c));
    } else {
      f.children.push_back(std::move(p));
    }
  }
  if (f.children.empty()) return constant(true);
  return f;
}

FoFormula FoFormula::disj(std::vector<FoFormula> parts) {
  if (parts.empty()) return constant(false);
  FoFormula f;
  f.kind = Kind::Or;
  f.children = std::move(parts);
  return f;
}

FoFormula FoFormula::exists(std::vector<Var> vars, FoFormula body) {
  FoFormula f;
  f.kind = Kind::Exists;
  f.bound = std::move(vars);
  f.children.push_back(std::move(body));
  return f;
}

namespace {

void collect(const FoFormula& f, std::set<Var>& all, std::set<Var>& free, std::set<Var> scope) {
  switch (f.kind) {
    case FoFormula::Kind::Const:
      return;
    case FoFormula::Kind::Atom:
    case FoFormula::Kind::Between:
      for (const auto& t : f.terms) {
        for (const auto& v : t.variables()) {
          all.insert(v);
          if (!scope.contains(v)) free.insert(v);
        }
      }
      return;
    case FoFormula::Kind::Exists:
      for (const auto& v : f.bound) {
        all.insert(v);
        scope.insert(v);
      }
      [[fallthrough]];
    case FoFormula::Kind::And:
    case FoFormula::Kind::Or:
      for (const auto& c : f.children) collect(c, all, free, scope);
      return;
  }
}

const char* rel_text(Rel r) {
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

void debug_poly(std::ostream& os, const Polynomial& p) {
  if (p.terms().empty()) {
    os << '0';
    return;
  }
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (const auto& v : m) {
      os << '*' << (v.kind == Var::Kind::D ? "d" : "mu") << v.i << '_' << v.j;
      if (v.kind == Var::Kind::Mu) os << '@' << v.i0 << '_' << v.j0;
    }
  }
}

void debug(std::ostream& os, const FoFormula& f) {
  switch (f.kind) {
    case FoFormula::Kind::Const:
      os << (f.value ? "true" : "false");
      return;
    case FoFormula::Kind::Atom:
      debug_poly(os, f.terms[0]);
      os << ' ' << rel_text(f.rel) << ' ';
      debug_poly(os, f.terms[1]);
      return;
    case FoFormula::Kind::Between:
      debug_poly(os, f.terms[0]);
      os << " <= ";
      debug_poly(os, f.terms[1]);
      os << " <= ";
      debug_poly(os, f.terms[2]);
      return;
    case FoFormula::Kind::And:
    case FoFormula::Kind::Or: {
      os << (f.kind == FoFormula::Kind::And ? "(and" : "(or");
      for (const auto& c : f.children) {
        os << ' ';
        debug(os, c);
      }
      os << ')';
      return;
    }
    case FoFormula::Kind::Exists:
      os << "(exists " << f.bound.size() << ' ';
      debug(os, f.children.front());
      os << ')';
      return;
  }
}

}  // namespace

std::set<Var> occurring_variables(const FoFormula& f) {
  std::set<Var> all, free;
  collect(f, all, free, {});
  return all;
}

std::set<Var> free_variables(const FoFormula& f) {
  std::set<Var> all, free;
  collect(f, all, free, {});
  return free;
}

std::size_t count_exists(const FoFormula& f) {
  std::size_t n = f.kind == FoFormula::Kind::Exists ? 1 : 0;
  for (const auto& c : f.children) n += count_exists(c);
  return n;
}

std::size_t count_atoms(const FoFormula& f) {
  if (f.kind == FoFormula::Kind::Atom || f.kind == FoFormula::Kind::Between) return 1;
  std::size_t n = 0;
  for (const auto& c : f.children) n += count_atoms(c);
  return n;
}

bool holds(const Rational& lhs, Rel rel, const Rational& rhs) {
  switch (rel) {
    case Rel::Le:
      return lhs <= rhs;
    case Rel::Lt:
      return lhs < rhs;
    case Rel::Eq:
      return lhs == rhs;
    case Rel::Ge:
      return lhs >= rhs;
    case Rel::Gt:
      return lhs > rhs;
  }
  return false;
}

std::string debug_string(const FoFormula& f) {
  std::ostringstream os;
  debug(os, f);
  return os.str();
}

}  // namespace pmetric
