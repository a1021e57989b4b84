// Copyright 2026 The lcel Authors.
//
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

// Differential calculus on jet expressions.

#pragma once

#include <map>

#include "lcel/expr.hpp"
#include "lcel/jet_space.hpp"

namespace lcel {

// Partial derivative treating every q^j_(u) as an independent variable.
// Abstract sigma symbols depend on the order-0 coordinates only.
Expr partial(const Expr& e, JetKey key);
// Same, validating `key` against `space`.
Expr partial(const Expr& e, const JetSpace& space, JetKey key);

// Applies the total time derivative `times` times, normalizing after each
// application. Throws JetOrderOverflow when a jet order would exceed
// space.max_jet().
Expr total_derivative(const Expr& e, const JetSpace& space, int times = 1);

// Replaces jet coordinates by expressions. Unmapped jets are kept.
Expr substitute(const Expr& e, const std::map<JetKey, Expr>& replacements);

// Replaces named parameters by expressions.
Expr substitute_parameters(const Expr& e, const std::map<std::string, Expr>& replacements);

}  // namespace lcel
