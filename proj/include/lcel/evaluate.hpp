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

#pragma once

#include "lcel/expr.hpp"
#include "lcel/jet_space.hpp"

namespace lcel {

// Evaluates `e` at `point`. Subtrees built only from rational constants are
// folded exactly before conversion to double. Throws EvaluationError on
// division by zero, angle(0, 0), unbound symbols, or non-finite results.
double evaluate(const Expr& e, const Point& point);

// Exact value of a constant-only expression.
Rational evaluate_exact(const Expr& e);

}  // namespace lcel
