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

// Set partitions, partial exponential Bell polynomials, and the correction
// terms B_s with d^s/dt^s exp(-sigma) = exp(-sigma) * B_s.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "lcel/conformal_factor.hpp"
#include "lcel/expr.hpp"
#include "lcel/jet_space.hpp"
#include "lcel/print.hpp"

namespace lcel {

inline constexpr int kMaxPartitionSize = 8;
inline constexpr int kMaxBellOrder = 6;

// Blocks over the elements 1..m, each block sorted, blocks ordered by their
// smallest element.
struct Partition {
  std::vector<std::vector<int>> blocks;

  bool operator==(const Partition&) const = default;
};

// All partitions of {1..m} in restricted-growth-string order. 1 <= m <= 8.
std::vector<Partition> set_partitions(int m);

// One monomial of B_{s,m}: c_j factors of the j-th derivative.
struct BellTerm {
  Rational coefficient;
  std::vector<int> exponents;  // c_1 .. c_s

  // Derivative order carried by each of the m slots, highest first.
  std::vector<int> slot_orders() const;
};

// All exponent vectors with sum_j j c_j = s and sum_j c_j = m, with
// coefficient s! / prod_j (c_j! (j!)^{c_j}). 1 <= m <= s <= 6.
std::vector<BellTerm> bell_terms(int s, int m);

// Order in which Bell-monomial factors are paired with the slots of Phi_m.
enum class SlotPairing { kHighestFirst, kLowestFirst };

// B_{s,m} with slot k carrying coordinate index slot_indices[k]:
// sum over terms of coefficient * prod_k q^{slot_indices[k]}_(order_k).
Expr bell_polynomial(int s, int m, std::span<const int> slot_indices,
                     SlotPairing pairing = SlotPairing::kHighestFirst);

// Phi_m(i_1..i_m) = sum over partitions p of the m slots of
// (-1)^{|p|} prod_{S in p} d^{|S|} sigma / prod_{u in S} dq^{i_u}.
// Slots are distinguishable positions even when index values repeat.
Expr phi(const ConformalFactor& sigma, std::span<const int> indices);

// B_s = sum_m Phi_m . B_{s,m}, each Bell factor carrying its own summed
// coordinate index. B_0 = 1. Normalized. Requires s <= min(6, max_jet - 1).
Expr calB(int s, const ConformalFactor& sigma, const JetSpace& space,
          SlotPairing pairing = SlotPairing::kHighestFirst);

// exp(sigma) * D_t^s exp(-sigma), normalized: the differentiation route to B_s.
Expr calB_oracle(int s, const ConformalFactor& sigma, const JetSpace& space);

// Index-notation renderings with free indices i, j, k, l, ...
std::string phi_index_form(int m, Format format);
std::string bell_index_form(int s, int m, Format format);
std::string calB_index_form(int s, Format format);

}  // namespace lcel
