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

#include "pmetric/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace pmetric {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long value) : value_(std::to_string(value)) {}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class num(std::string(num_text), 10);
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_literal(den_text) || den_text.front() == '-') {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    den = mpz_class(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(mpq_class(num, den));
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = ::abs(value_);
  return r;
}

Rational Rational::floor_to(const mpz_class& denominator) const {
  if (denominator <= 0) throw std::invalid_argument("floor_to needs a positive denominator");
  mpz_class scaled = value_.get_num() * denominator;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q, denominator));
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::fraction() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero on |x| * 10^digits
  mpz_class num = ::abs(value_.get_num()) * scale * 2 + value_.get_den();
  mpz_class den = value_.get_den() * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

  std::string digits_text = q.get_str();
  if (digits_text.size() <= static_cast<std::size_t>(digits)) {
    digits_text.insert(0, static_cast<std::size_t>(digits) + 1 - digits_text.size(), '0');
  }
  std::string out;
  if (sign() < 0 && q != 0) out += '-';
  const auto int_len = digits_text.size() - static_cast<std::size_t>(digits);
  out += digits_text.substr(0, int_len);
  if (digits > 0) {
    out += '.';
    out += digits_text.substr(int_len);
  }
  return out;
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pmetric
