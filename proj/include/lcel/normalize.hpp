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

namespace lcel {

// Canonical form: a flattened sum of monomials with exact rational
// coefficients. Each monomial is a sorted product of atoms raised to
// nonzero integer powers times at most one exponential, whose argument is
// itself canonical. Atoms are jets, parameters, sigma symbols, function
// applications with canonical arguments, and monic multi-term sums carrying
// a negative exponent. Positive powers of sums are expanded, so polynomial
// identities in jets and sigma symbols normalize to the literal 0.
//
// normalize is idempotent and preserves values wherever the input is
// defined.
Expr normalize(const Expr& e);

}  // namespace lcel
