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

#include <string>

#include "pmetric/model.hpp"

namespace pmetric {

/// "23/72 (≈0.319444)"; integers render as "k/1".
std::string human_rational(const Rational& r, int digits = 6);

/// 1-based "(i,j)".
std::string pair_text(StateIndex i, StateIndex j);

/// Label of a state; "s<k>" (1-based) when the system has no names.
std::string state_name(const Pts& pts, StateIndex s);

}  // namespace pmetric
