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

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmetric/encode.hpp"
#include "pmetric/fixpoint.hpp"

namespace pmetric {

enum class Outcome { True, False, Unknown };
enum class Provenance { Internal, External };

struct Decision {
  Outcome outcome = Outcome::Unknown;
  Provenance provenance = Provenance::Internal;
  std::string diagnostics;
  /// External only: the solver line the verdict was read from.
  std::string verdict_line;
  /// The decision procedure itself failed (process error, timeout, no
  /// verdict); distinct from an honest Unknown.
  bool failed = false;
};

std::string to_string(Outcome o);

/// Decision procedure for closed query sentences.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Decision decide(const Query& q) = 0;
};

/// Answers from certified fixpoint bounds. With an exact distance the
/// sentence itself is evaluated at the behavioural distance, which is a
/// witness whenever the sentence is true.
class InternalOracle : public Oracle {
 public:
  InternalOracle(Pts pts, FixpointOptions options = {}, Rational epsilon = Rational(1, 1000),
                 std::size_t refinements = 3);
  Decision decide(const Query& q) override;
  /// Bounds at the given discount, computed once.
  const BoundsResult& bounds(const Rational& discount);

 private:
  Pts pts_;
  FixpointOptions options_;
  Rational epsilon_;
  std::size_t refinements_;
  std::map<Rational, BoundsResult> cache_;
};

struct ExternalConfig {
  /// Shell command; every "{}" is replaced by the script path, which is
  /// appended when there is no placeholder.
  std::string command;
  std::chrono::milliseconds timeout{60000};
  std::string tmpdir = "/tmp";
  bool keep_script = false;
};

/// Writes the SMT-LIB script to a fresh temporary file and runs the command
/// through /bin/sh. The verdict is the first output line that is exactly
/// sat, unsat, True or False (unknown maps to Unknown).
class ExternalOracle : public Oracle {
 public:
  explicit ExternalOracle(ExternalConfig config) : config_(std::move(config)) {}
  Decision decide(const Query& q) override;

 private:
  ExternalConfig config_;
};

struct OracleSpec {
  bool external = false;
  ExternalConfig config;
};

/// "internal" or "cmd:<template>". Throws std::invalid_argument otherwise.
OracleSpec parse_oracle_spec(const std::string& text);

struct BisectionStep {
  Rational lower;
  Rational upper;
  Rational bound;
  Decision decision;
};

struct PairApproximation {
  Rational lower;
  Rational upper = Rational(1);
  /// "bisection" when every step got a verdict, "bounds" when an Unknown
  /// was resolved from the certified fixpoint interval.
  std::string method = "bisection";
  std::vector<BisectionStep> steps;
  bool failed = false;
  std::string diagnostics;
};

struct ApproximationOptions {
  bool simplify = true;
  FixpointOptions fixpoint;
};

/// Bisection on the bound m from [0,1] until the width is at most epsilon.
/// Undiscounted. Throws std::invalid_argument when epsilon <= 0.
PairApproximation approximate_pair(const Pts& pts, StateIndex i0, StateIndex j0, const Rational& epsilon,
                                   Oracle& oracle, const ApproximationOptions& options = {});

}  // namespace pmetric
