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

// First-order Legendre transform and locally conformal Hamilton equations.
// Phase space of a dim-r model has coordinates q^i = jet(i, 0) and
// p_i = jet(r + i, 0).

#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lcel/dynamics.hpp"
#include "lcel/euler_lagrange.hpp"

namespace lcel {

class HamiltonianModel {
 public:
  struct Value {
    double h = 0.0;
    Eigen::VectorXd dh_dq;
    Eigen::VectorXd dh_dp;
  };

  // A symbolic Hamiltonian over the phase space.
  HamiltonianModel(int dim, Expr hamiltonian, ConformalFactor sigma, std::map<std::string, double> parameters);

  int dim() const { return dim_; }
  const ConformalFactor& sigma() const { return sigma_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  // Phase space as a jet space of dimension 2r.
  JetSpace phase_space() const { return JetSpace(2 * dim_, 1); }

  bool is_symbolic() const { return hamiltonian_.has_value(); }
  // Throws InvalidArgument when the Hamiltonian is only known numerically.
  const Expr& hamiltonian() const;

  // H and its gradients at (q, p).
  Value evaluate(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const;
  // The velocity dH/dp.
  Eigen::VectorXd velocity(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const;

 private:
  friend HamiltonianModel legendre_first_order(const LagrangianModel& model);
  HamiltonianModel(int dim, ConformalFactor sigma, std::map<std::string, double> parameters)
      : dim_(dim), sigma_(std::move(sigma)), parameters_(std::move(parameters)) {}

  Point phase_point(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const;
  // Newton solve of dL/dq'(q, v) = p.
  Eigen::VectorXd solve_velocity(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const;

  int dim_;
  std::optional<Expr> hamiltonian_;
  std::vector<Expr> dh_dq_;
  std::vector<Expr> dh_dp_;
  ConformalFactor sigma_;
  std::map<std::string, double> parameters_;
  // Numeric route: the Lagrangian, its velocity gradient and Hessian, and
  // its position gradient, over the tangent jet space.
  std::optional<LagrangianModel> lagrangian_;
  std::vector<Expr> dl_dv_;
  std::vector<Expr> d2l_dv2_;
  std::vector<Expr> dl_dq_;
};

// Legendre transform p = dL/dq', H = p q' - L. Closed form when L is
// quadratic in the velocities, otherwise a damped Newton solve per
// evaluation. Throws InvalidArgument unless the model has order 1 and a
// concrete sigma, DegenerateSystem when the velocity Hessian is singular at
// a sampled point.
HamiltonianModel legendre_first_order(const LagrangianModel& model);

// A_ij = phi_i p_j - phi_j p_i over the phase space.
Expr lcs_tensor(const HamiltonianModel& ham, int i, int j);

// The vector field q' = dH/dp, p' = -dH/dq - A dH/dp + H phi, symbolic.
// Requires a symbolic Hamiltonian.
std::vector<Expr> lcs_hamilton_field(const HamiltonianModel& ham);

// The same field as a numeric evaluator on (q, p).
VectorField lcs_hamilton_rhs(const HamiltonianModel& ham);

struct CrosscheckResult {
  double max_discrepancy = 0.0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> lagrangian_positions;
  std::vector<Eigen::VectorXd> hamiltonian_positions;
};

// Integrates the locally conformal Euler-Lagrange system and the locally
// conformal Hamilton system from matched initial data (p = dL/dq' at the
// initial point) and compares positions on the common grid. `init` holds
// q^i and q'^i.
CrosscheckResult lagrangian_hamiltonian_crosscheck(const LagrangianModel& model,
                                                   const std::map<JetKey, double>& init, double t0, double t1,
                                                   double dt);

}  // namespace lcel
