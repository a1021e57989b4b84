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

// Classical and locally conformal Euler-Lagrange equations of arbitrary
// order. Equations are residuals: an equation holds along a curve when its
// residual vanishes there.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lcel/combinatorics.hpp"
#include "lcel/conformal_factor.hpp"
#include "lcel/expr.hpp"
#include "lcel/jet_space.hpp"
#include "lcel/print.hpp"

namespace lcel {

struct LagrangianModel {
  JetSpace space;
  // The global Lagrangian, of jet order at most space.order().
  Expr lagrangian;
  ConformalFactor sigma = ConformalFactor::zero();
  // Display names, one per coordinate. May be empty.
  std::vector<std::string> coordinates;
  // Numeric values for named parameters, used wherever the model is
  // evaluated.
  std::map<std::string, double> parameters;

  // Throws InvalidArgument on an order violation, abstract symbols in the
  // Lagrangian, or a coordinate-name count that does not match dim.
  void validate() const;
};

enum class EquationForm { kClassical, kLcExpanded, kLcCompact };

std::string form_name(EquationForm form);

struct EquationSet {
  std::vector<Expr> residuals;
  EquationForm form = EquationForm::kClassical;
  int order = 0;
  // Highest jet order present in any residual.
  int max_jet_order = 0;
};

// sum_s (-1)^s D^s dL/dq^i_(s).
EquationSet classical_el(const LagrangianModel& model);

// A^n_i[L] = phi_i L + sum_{s=1}^{n} (-1)^{s+1} sum_{a=0}^{s-1} C(s,a)
// B_{s-a} D^a dL/dq^i_(s), normalized.
std::vector<Expr> conformal_rhs(const LagrangianModel& model,
                                SlotPairing pairing = SlotPairing::kHighestFirst);

// classical_el - A^n[L], normalized. Contains no exponential of sigma.
EquationSet lc_el_expanded(const LagrangianModel& model);

// sum_s (-1)^s D^s (e^{-sigma} dL/dq^i_(s)) - e^{-sigma} phi_i L.
EquationSet lc_el_compact(const LagrangianModel& model);

// Operator structure of A^n in index notation, e.g. for n = 3
// "phi_i L + B_1 dL/dq'^i - (B_2 + 2 B_1 d/dt) dL/dq''^i + ...".
std::string conformal_rhs_structure(int n, Format format);

// Residuals printed one per line as "<residual> = 0".
std::string format_equations(const EquationSet& eqs, const std::vector<std::string>& coordinates,
                             Format format);

}  // namespace lcel
