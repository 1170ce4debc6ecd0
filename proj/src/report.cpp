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

#include "pmetric/report.hpp"

namespace pmetric {

std::string human_rational(const Rational& r, int digits) { return r.fraction() + " (≈" + r.decimal(digits) + ")"; }

std::string pair_text(StateIndex i, StateIndex j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string state_name(const Pts& pts, StateIndex s) { return pts.label(s); }

}  // namespace pmetric
