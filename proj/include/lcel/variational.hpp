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

// Finite-difference check of the variational derivation: the derivative of
// the weighted action along a perturbation against the pairing of the
// compact residual with that perturbation.

#pragma once

#include <functional>
#include <vector>

#include "lcel/euler_lagrange.hpp"

namespace lcel {

// d^order q^index / dt^order at time t. Indices are 1-based.
using Curve = std::function<double(int index, int order, double t)>;

// coefficients[i][k] multiplies t^k in coordinate i + 1.
Curve polynomial_curve(std::vector<std::vector<double>> coefficients);

// Planar loop (cx + r cos(w t + phase), cy + r sin(w t + phase)).
Curve circle_curve(double cx, double cy, double radius, double omega, double phase = 0.0);

// direction_i * ((t - a)(b - t))^(n + 1): vanishes with its first n
// derivatives at both ends.
Curve bump(double a, double b, int n, std::vector<double> direction);

// Point holding every jet of `curve` at t, with the model's parameters bound.
Point curve_point(const LagrangianModel& model, const Curve& curve, double t);

struct VariationalOptions {
  double t0 = 0.0;
  double t1 = 1.0;
  // Quadrature step; rounded to an even number of Simpson intervals.
  double grid = 1e-3;
  // Step of the central difference in the perturbation amplitude.
  double h = 1e-4;
};

struct VariationalCheck {
  // (S[curve + h bump] - S[curve - h bump]) / 2h for S = int e^{-sigma} L dt.
  double action_derivative = 0.0;
  // int sum_i compact_i bump^i dt.
  double residual_pairing = 0.0;
  double discrepancy = 0.0;
  // Richardson estimate of the quadrature error in either number.
  double quadrature_estimate = 0.0;
};

// Requires a concrete sigma. Throws InvalidArgument otherwise.
VariationalCheck variational_fd_check(const LagrangianModel& model, const Curve& curve,
                                      const Curve& perturbation,
                                      const VariationalOptions& options = {});

}  // namespace lcel
