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

#pragma once

#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmetric/rational.hpp"

// Core value types. State indices are 0-based everywhere in the library;
// only file formats and rendered output use 1-based indices.

namespace pmetric {

using StateIndex = std::size_t;

/// Unordered state pair, stored with first <= second.
struct StatePair {
  StateIndex first = 0;
  StateIndex second = 0;

  static StatePair canonical(StateIndex a, StateIndex b) { return a <= b ? StatePair{a, b} : StatePair{b, a}; }
  friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

/// Dense square matrix of rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n, const Rational& fill = Rational(0)) : n_(n), data_(n * n, fill) {}
  /// Throws std::invalid_argument if `rows` is not square.
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

enum class ViolationKind { RowSum, EntryRange, Diagonal, Asymmetric, Triangle, Marginal, Negative, Shape };

struct Violation {
  ViolationKind kind;
  std::vector<StateIndex> states;  // 0-based; row, pair or triple depending on kind
  Rational value;                  // offending sum or entry
  std::string message;             // 1-based, human readable
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

enum class StateKind { Live, Stuck };

/// Raised when constructing a Pts from a matrix that fails validate_pts.
class InvalidSystem : public std::invalid_argument {
 public:
  explicit InvalidSystem(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Checks the row-sum rule (every row sums to exactly 0 or 1) and that all
/// entries lie in [0,1].
ValidationReport validate_pts(const RationalMatrix& pi);

/// A finite probabilistic transition system. Immutable once constructed;
/// construction validates the matrix.
class Pts {
 public:
  /// Throws InvalidSystem. Empty `labels` means default names s1..sN.
  explicit Pts(RationalMatrix pi, std::vector<std::string> labels = {});

  std::size_t size() const { return pi_.size(); }
  const Rational& pi(StateIndex from, StateIndex to) const { return pi_(from, to); }
  std::span<const Rational> row(StateIndex from) const { return pi_.row(from); }
  const RationalMatrix& matrix() const { return pi_; }

  bool has_labels() const { return !labels_.empty(); }
  std::string label(StateIndex s) const;
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_live(StateIndex s) const { return live_[s]; }

  friend bool operator==(const Pts& a, const Pts& b) { return a.pi_ == b.pi_ && a.labels_ == b.labels_; }

 private:
  RationalMatrix pi_;
  std::vector<std::string> labels_;
  std::vector<bool> live_;
};

inline ValidationReport validate_pts(const Pts& pts) { return validate_pts(pts.matrix()); }

std::vector<StateKind> classify_states(const Pts& pts);

/// Forward iterator over the N(N-1)/2 pairs (i, j) with i < j.
class UpperPairs {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = StatePair;
    using difference_type = std::ptrdiff_t;
    using pointer = const StatePair*;
    using reference = StatePair;

    iterator() = default;
    iterator(std::size_t n, StatePair at) : n_(n), at_(at) {}
    StatePair operator*() const { return at_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.at_ == b.at_; }

   private:
    std::size_t n_ = 0;
    StatePair at_{};
  };

  explicit UpperPairs(std::size_t n) : n_(n) {}
  iterator begin() const;
  iterator end() const { return {n_, {n_, n_}}; }
  std::size_t count() const { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

 private:
  std::size_t n_;
};

/// Full symmetric matrix of distances. set() writes both orientations, so the
/// stored matrix is symmetric unless constructed from an asymmetric raw matrix
/// (which validate_pseudometric reports).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : m_(n) {}
  explicit DistanceMatrix(RationalMatrix raw) : m_(std::move(raw)) {}

  /// All-zero matrix: the top element of the reversed order.
  static DistanceMatrix top(std::size_t n) { return DistanceMatrix(n); }
  /// Discrete metric: the bottom element.
  static DistanceMatrix bottom(std::size_t n);

  std::size_t size() const { return m_.size(); }
  const Rational& operator()(StateIndex i, StateIndex j) const { return m_(i, j); }
  const Rational& at(StatePair p) const { return m_(p.first, p.second); }
  void set(StateIndex i, StateIndex j, const Rational& v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const RationalMatrix& raw() const { return m_; }
  UpperPairs pairs() const { return UpperPairs(size()); }

  /// Entrywise a <= b.
  friend bool leq(const DistanceMatrix& a, const DistanceMatrix& b);
  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  RationalMatrix m_;
};

/// Diagonal zero, symmetric, entries in [0,1], triangle inequality.
ValidationReport validate_pseudometric(const DistanceMatrix& d);

/// Shortest-path closure of a symmetric nonnegative zero-diagonal matrix.
/// Never increases an entry; the result satisfies the triangle inequality.
DistanceMatrix metric_closure(DistanceMatrix d);

/// Exactly known distances for a subset of unordered pairs (diagonal implied 0).
using PartialDistances = std::map<StatePair, Rational>;

/// Joint distribution with prescribed marginals: row i sums to
/// row_marginal[i], column j sums to col_marginal[j].
struct Coupling {
  RationalMatrix plan;
  std::vector<Rational> row_marginal;
  std::vector<Rational> col_marginal;
};

ValidationReport validate_coupling(const Coupling& c);

/// Sum of cost(i,j) * plan(i,j).
Rational coupling_cost(const Coupling& c, const RationalMatrix& cost);

}  // namespace pmetric
