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

// Reduction of residual equations to explicit ODEs and fixed-step RK4
// integration.

#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lcel/euler_lagrange.hpp"

namespace lcel {

inline constexpr double kSingularityThreshold = 1e-12;

// Classical fixed-step fourth-order Runge-Kutta for y' = f(t, y).
using VectorField = std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& y)>;

Eigen::VectorXd rk4_step(const VectorField& f, double t, const Eigen::VectorXd& y, double dt);

// Number of steps covering [t0, t1] with step close to dt.
int step_count(double t0, double t1, double dt);

// Returns the states at t0, t0 + h, ..., t1 with h = (t1 - t0) / step_count.
std::vector<Eigen::VectorXd> rk4_integrate(const VectorField& f, const Eigen::VectorXd& y0, double t0,
                                           double t1, double dt);

// Residual equations solved for their top jets: M(state) top = -b(state).
class ExplicitODE {
 public:
  int dim() const { return static_cast<int>(orders_.size()); }
  // Effective order per coordinate: the highest jet order occurring.
  const std::vector<int>& orders() const { return orders_; }
  // Jets making up the state vector, coordinate-major, orders 0..k_i-1.
  const std::vector<JetKey>& layout() const { return layout_; }
  const EquationSet& equations() const { return equations_; }
  const LagrangianModel& model() const { return model_; }
  // Symbolic M (row-major) and b.
  const std::vector<Expr>& matrix() const { return matrix_; }
  const std::vector<Expr>& offset() const { return offset_; }

  // Point carrying the state, with top jets zero and parameters bound.
  Point point(const Eigen::VectorXd& state) const;
  // Solves for the top jets. Throws DegenerateSystem when |det M| does not
  // exceed the singularity threshold; the determinant is reported through
  // `det` when non-null.
  Eigen::VectorXd top_jets(const Eigen::VectorXd& state, double* det = nullptr) const;
  // Time derivative of the state.
  Eigen::VectorXd derivative(const Eigen::VectorXd& state, double* det = nullptr) const;
  // Packs a jet assignment into a state. Throws InvalidArgument unless
  // `values` names exactly the layout jets.
  Eigen::VectorXd pack(const std::map<JetKey, double>& values) const;

 private:
  friend ExplicitODE to_explicit_ode(const EquationSet& eqs, const LagrangianModel& model);
  ExplicitODE(EquationSet equations, LagrangianModel model)
      : equations_(std::move(equations)), model_(std::move(model)) {}

  std::vector<int> orders_;
  std::vector<JetKey> layout_;
  EquationSet equations_;
  LagrangianModel model_;
  std::vector<Expr> matrix_;
  std::vector<Expr> offset_;
};

// Requires a concrete sigma. Throws DegenerateSystem when a residual is not
// affine in the top jets or M is singular at every sampled point.
ExplicitODE to_explicit_ode(const EquationSet& eqs, const LagrangianModel& model);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  // max_i |residual_i| at each time, with the top jets taken from a
  // fourth-order finite difference of the integrated state.
  std::vector<double> residuals;
  double max_residual = 0.0;
  double min_abs_det = 0.0;
};

// Throws NumericalFailure (carrying the time) on a singular M or a
// non-finite state, InvalidArgument on bad bounds.
Trajectory integrate(const ExplicitODE& ode, const Eigen::VectorXd& init, double t0, double t1, double dt);

// Column names t, x, x_d1, ..., residual_max.
std::vector<std::string> csv_header(const ExplicitODE& ode);
// Shortest round-trip decimal representation, LF line endings.
void write_csv(std::ostream& out, const ExplicitODE& ode, const Trajectory& trajectory);

}  // namespace lcel
