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

// Random expression generators shared by the property tests.

#pragma once

#include <random>
#include <vector>

#include "lcel/expr.hpp"

namespace lcel::testing {

inline Rational random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  int p = 0;
  while (p == 0) p = num(rng);
  Rational r(p, den(rng));
  r.canonicalize();
  return r;
}

// Sum of `terms` monomials in q^i_(s), 1 <= i <= dim, 0 <= s <= max_order,
// each of total degree in [0, degree].
inline Expr random_polynomial(std::mt19937_64& rng, int dim, int max_order, int degree, int terms) {
  std::uniform_int_distribution<int> pick_index(1, dim);
  std::uniform_int_distribution<int> pick_order(0, max_order);
  std::uniform_int_distribution<int> pick_degree(0, degree);
  std::vector<Expr> out;
  for (int t = 0; t < terms; ++t) {
    std::vector<Expr> factors{constant(random_coefficient(rng))};
    const int d = pick_degree(rng);
    for (int k = 0; k < d; ++k) factors.push_back(jet(pick_index(rng), pick_order(rng)));
    out.push_back(product(std::move(factors)));
  }
  return sum(std::move(out));
}

// Polynomial with at least one monomial of degree >= 1 in every selected
// order, so generated Lagrangians depend on their top jets.
inline Expr random_lagrangian(std::mt19937_64& rng, int dim, int order, int degree, int terms) {
  std::uniform_int_distribution<int> pick_index(1, dim);
  Expr top = product({constant(random_coefficient(rng)), jet(pick_index(rng), order),
                      jet(pick_index(rng), order)});
  return random_polynomial(rng, dim, order, degree, terms) + top;
}

inline Expr random_sigma(std::mt19937_64& rng, int dim, int degree, int terms) {
  return random_polynomial(rng, dim, 0, degree, terms);
}

// Polynomial skeleton with exp/sin/cos and a quotient sprinkled in.
inline Expr random_smooth(std::mt19937_64& rng, int dim, int max_order) {
  Expr a = random_polynomial(rng, dim, max_order, 2, 3);
  Expr b = random_polynomial(rng, dim, max_order, 1, 2);
  Expr c = random_polynomial(rng, dim, max_order, 2, 2);
  std::uniform_int_distribution<int> which(0, 3);
  switch (which(rng)) {
    case 0: return a * exp(b) + c;
    case 1: return a * sin(b) + cos(c);
    case 2: return a + c * exp(-b);
    default: return a * c + sin(b) * b;
  }
}

}  // namespace lcel::testing
