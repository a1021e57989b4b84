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

#include "lcel/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lcel/calculus.hpp"
#include "lcel/equivalence.hpp"
#include "lcel/errors.hpp"
#include "lcel/evaluate.hpp"
#include "lcel/normalize.hpp"

namespace lcel {
namespace {

constexpr double kNewtonTolerance = 1e-12;
constexpr int kNewtonIterations = 50;

Expr momentum(int dim, int i) { return jet(dim + i, 0); }

// Determinant by cofactor expansion along the first row.
Expr symbolic_det(const std::vector<std::vector<Expr>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  std::vector<Expr> terms;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Expr>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const Expr t = m[0][c] * symbolic_det(minor);
    terms.push_back(c % 2 == 0 ? t : -t);
  }
  return normalize(sum(terms));
}

// adj(m)[j][k] = (-1)^{j+k} det(m without row k and column j).
std::vector<std::vector<Expr>> adjugate(const std::vector<std::vector<Expr>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Expr>> adj(n, std::vector<Expr>(n));
  if (n == 1) {
    adj[0][0] = integer(1);
    return adj;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::vector<Expr>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == k) continue;
        std::vector<Expr> row;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != j) row.push_back(m[r][c]);
        }
        minor.push_back(std::move(row));
      }
      const Expr d = symbolic_det(minor);
      adj[j][k] = (j + k) % 2 == 0 ? d : normalize(-d);
    }
  }
  return adj;
}

Point tangent_point(const LagrangianModel& model, const Eigen::VectorXd& q, const Eigen::VectorXd& v) {
  Point p(model.space.dim(), model.space.max_jet());
  for (int i = 0; i < model.space.dim(); ++i) {
    p.jet(i + 1, 0) = q[i];
    p.jet(i + 1, 1) = v[i];
  }
  for (const auto& [name, value] : model.parameters) p.set_parameter(name, value);
  return p;
}

}  // namespace

HamiltonianModel::HamiltonianModel(int dim, Expr hamiltonian, ConformalFactor sigma,
                                   std::map<std::string, double> parameters)
    : dim_(dim), hamiltonian_(normalize(hamiltonian)), sigma_(std::move(sigma)), parameters_(std::move(parameters)) {
  if (dim < 1) throw InvalidArgument("Hamiltonian model needs dim >= 1");
  if (hamiltonian_->max_order() > 0 || hamiltonian_->has_sigma()) {
    throw InvalidArgument("Hamiltonian must be a function of (q, p)");
  }
  for (int i = 1; i <= dim; ++i) {
    dh_dq_.push_back(normalize(partial(*hamiltonian_, {i, 0})));
    dh_dp_.push_back(normalize(partial(*hamiltonian_, {dim + i, 0})));
  }
}

const Expr& HamiltonianModel::hamiltonian() const {
  if (!hamiltonian_) throw InvalidArgument("the Hamiltonian is only available numerically");
  return *hamiltonian_;
}

Point HamiltonianModel::phase_point(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const {
  Point pt(2 * dim_, 1);
  for (int i = 0; i < dim_; ++i) {
    pt.jet(i + 1, 0) = q[i];
    pt.jet(dim_ + i + 1, 0) = p[i];
  }
  for (const auto& [name, value] : parameters_) pt.set_parameter(name, value);
  return pt;
}

Eigen::VectorXd HamiltonianModel::solve_velocity(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const {
  const int r = dim_;
  auto residual = [&](const Eigen::VectorXd& v) {
    const Point pt = tangent_point(*lagrangian_, q, v);
    Eigen::VectorXd f(r);
    for (int i = 0; i < r; ++i) f[i] = lcel::evaluate(dl_dv_[static_cast<std::size_t>(i)], pt) - p[i];
    return f;
  };
  Eigen::VectorXd v = Eigen::VectorXd::Zero(r);
  Eigen::VectorXd f = residual(v);
  const double scale = 1.0 + p.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < kNewtonIterations; ++it) {
    if (f.lpNorm<Eigen::Infinity>() <= kNewtonTolerance * scale) return v;
    const Point pt = tangent_point(*lagrangian_, q, v);
    Eigen::MatrixXd jac(r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) jac(i, j) = lcel::evaluate(d2l_dv2_[static_cast<std::size_t>(i * r + j)], pt);
    }
    if (!(std::abs(jac.determinant()) > kSingularityThreshold)) {
      throw DegenerateSystem("velocity Hessian is singular during Legendre inversion");
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(f);
    double alpha = 1.0;
    Eigen::VectorXd next = v - step;
    Eigen::VectorXd fn = residual(next);
    for (int halving = 0; halving < 30 && fn.norm() >= f.norm(); ++halving) {
      alpha /= 2;
      next = v - alpha * step;
      fn = residual(next);
    }
    v = next;
    f = fn;
  }
  if (f.lpNorm<Eigen::Infinity>() <= kNewtonTolerance * scale) return v;
  throw NumericalFailure("Legendre inversion did not converge", std::numeric_limits<double>::quiet_NaN());
}

HamiltonianModel::Value HamiltonianModel::evaluate(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const {
  Value out;
  out.dh_dq.resize(dim_);
  out.dh_dp.resize(dim_);
  if (hamiltonian_) {
    const Point pt = phase_point(q, p);
    out.h = lcel::evaluate(*hamiltonian_, pt);
    for (int i = 0; i < dim_; ++i) {
      out.dh_dq[i] = lcel::evaluate(dh_dq_[static_cast<std::size_t>(i)], pt);
      out.dh_dp[i] = lcel::evaluate(dh_dp_[static_cast<std::size_t>(i)], pt);
    }
    return out;
  }
  const Eigen::VectorXd v = solve_velocity(q, p);
  const Point pt = tangent_point(*lagrangian_, q, v);
  out.h = p.dot(v) - lcel::evaluate(lagrangian_->lagrangian, pt);
  out.dh_dp = v;
  for (int i = 0; i < dim_; ++i) out.dh_dq[i] = -lcel::evaluate(dl_dq_[static_cast<std::size_t>(i)], pt);
  return out;
}

Eigen::VectorXd HamiltonianModel::velocity(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const {
  return evaluate(q, p).dh_dp;
}

HamiltonianModel legendre_first_order(const LagrangianModel& model) {
  model.validate();
  if (model.space.order() != 1) {
    throw InvalidArgument("the Legendre transform is implemented for first-order Lagrangians only");
  }
  if (model.sigma.is_abstract()) throw InvalidArgument("the Legendre transform needs a concrete sigma");
  const int r = model.space.dim();
  const Expr& L = model.lagrangian;

  std::vector<Expr> dl_dv;
  std::vector<Expr> hessian;
  for (int j = 1; j <= r; ++j) {
    dl_dv.push_back(normalize(partial(L, {j, 1})));
    for (int k = 1; k <= r; ++k) hessian.push_back(normalize(partial(dl_dv.back(), {k, 1})));
  }

  // Regularity at sampled tangent points.
  SymbolSet symbols;
  for (const Expr& e : hessian) collect_symbols(e, symbols);
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 10; ++trial) {
    const Point pt = random_point(model.space, symbols, model.parameters, SamplingBox{}, rng);
    Eigen::MatrixXd w(r, r);
    for (int j = 0; j < r; ++j) {
      for (int k = 0; k < r; ++k) w(j, k) = evaluate(hessian[static_cast<std::size_t>(j * r + k)], pt);
    }
    if (!(std::abs(w.determinant()) > kSingularityThreshold)) {
      throw DegenerateSystem("degenerate Legendre map: the velocity Hessian is singular");
    }
  }

  bool quadratic = true;
  for (const Expr& w : hessian) {
    for (int l = 1; l <= r && quadratic; ++l) quadratic = normalize(partial(w, {l, 1})).is_zero();
  }

  if (!quadratic) {
    HamiltonianModel ham(r, model.sigma, model.parameters);
    ham.lagrangian_ = model;
    ham.dl_dv_ = dl_dv;
    ham.d2l_dv2_ = hessian;
    for (int i = 1; i <= r; ++i) ham.dl_dq_.push_back(normalize(partial(L, {i, 0})));
    return ham;
  }

  // p = W v + b with W, b functions of q; v = adj(W) (p - b) / det W.
  std::map<JetKey, Expr> at_rest;
  for (int j = 1; j <= r; ++j) at_rest[{j, 1}] = integer(0);
  std::vector<std::vector<Expr>> w(static_cast<std::size_t>(r));
  std::vector<Expr> shifted;
  for (int j = 0; j < r; ++j) {
    for (int k = 0; k < r; ++k) w[static_cast<std::size_t>(j)].push_back(hessian[static_cast<std::size_t>(j * r + k)]);
    shifted.push_back(momentum(r, j + 1) - normalize(substitute(dl_dv[static_cast<std::size_t>(j)], at_rest)));
  }
  const Expr det = symbolic_det(w);
  if (det.is_zero()) throw DegenerateSystem("degenerate Legendre map: det of the velocity Hessian is 0");
  const auto adj = adjugate(w);
  std::map<JetKey, Expr> velocity;
  std::vector<Expr> pv;
  for (int j = 0; j < r; ++j) {
    std::vector<Expr> num;
    for (int k = 0; k < r; ++k) num.push_back(adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * shifted[static_cast<std::size_t>(k)]);
    const Expr vj = normalize(quotient(sum(num), det));
    velocity[{j + 1, 1}] = vj;
    pv.push_back(momentum(r, j + 1) * vj);
  }
  const Expr h = sum(pv) - substitute(L, velocity);
  return HamiltonianModel(r, h, model.sigma, model.parameters);
}

Expr lcs_tensor(const HamiltonianModel& ham, int i, int j) {
  const int r = ham.dim();
  return ham.sigma().phi(i) * momentum(r, j) - ham.sigma().phi(j) * momentum(r, i);
}

std::vector<Expr> lcs_hamilton_field(const HamiltonianModel& ham) {
  const int r = ham.dim();
  const Expr& h = ham.hamiltonian();
  std::vector<Expr> field;
  for (int i = 1; i <= r; ++i) field.push_back(normalize(partial(h, {r + i, 0})));
  for (int i = 1; i <= r; ++i) {
    std::vector<Expr> terms{-partial(h, {i, 0}), h * ham.sigma().phi(i)};
    for (int j = 1; j <= r; ++j) terms.push_back(-(lcs_tensor(ham, i, j) * partial(h, {r + j, 0})));
    field.push_back(normalize(sum(terms)));
  }
  return field;
}

VectorField lcs_hamilton_rhs(const HamiltonianModel& ham) {
  const int r = ham.dim();
  std::vector<Expr> phi;
  for (int i = 1; i <= r; ++i) phi.push_back(ham.sigma().phi(i));
  return [ham, phi, r](double, const Eigen::VectorXd& y) {
    const Eigen::VectorXd q = y.head(r);
    const Eigen::VectorXd p = y.tail(r);
    const HamiltonianModel::Value v = ham.evaluate(q, p);
    Point pt(r, 1);
    for (int i = 0; i < r; ++i) pt.jet(i + 1, 0) = q[i];
    for (const auto& [name, value] : ham.parameters()) pt.set_parameter(name, value);
    Eigen::VectorXd f(r);
    for (int i = 0; i < r; ++i) f[i] = evaluate(phi[static_cast<std::size_t>(i)], pt);
    Eigen::VectorXd out(2 * r);
    out.head(r) = v.dh_dp;
    for (int i = 0; i < r; ++i) {
      double acc = -v.dh_dq[i] + v.h * f[i];
      for (int j = 0; j < r; ++j) acc -= (f[i] * p[j] - f[j] * p[i]) * v.dh_dp[j];
      out[r + i] = acc;
    }
    return out;
  };
}

CrosscheckResult lagrangian_hamiltonian_crosscheck(const LagrangianModel& model,
                                                   const std::map<JetKey, double>& init, double t0, double t1,
                                                   double dt) {
  const HamiltonianModel ham = legendre_first_order(model);
  const int r = model.space.dim();
  const ExplicitODE ode = to_explicit_ode(lc_el_expanded(model), model);
  for (int k : ode.orders()) {
    if (k != 2) throw DegenerateSystem("the Euler-Lagrange system is not of second order in every coordinate");
  }
  const Trajectory lag = integrate(ode, ode.pack(init), t0, t1, dt);

  Eigen::VectorXd q0(r);
  Eigen::VectorXd v0(r);
  for (int i = 0; i < r; ++i) {
    q0[i] = init.at({i + 1, 0});
    v0[i] = init.at({i + 1, 1});
  }
  const Point pt = tangent_point(model, q0, v0);
  Eigen::VectorXd y0(2 * r);
  y0.head(r) = q0;
  for (int i = 0; i < r; ++i) y0[r + i] = evaluate(partial(model.lagrangian, {i + 1, 1}), pt);
  const auto states = rk4_integrate(lcs_hamilton_rhs(ham), y0, t0, t1, dt);

  CrosscheckResult out;
  out.times = lag.times;
  for (std::size_t n = 0; n < states.size(); ++n) {
    Eigen::VectorXd ql(r);
    for (int i = 0; i < r; ++i) ql[i] = lag.states[n][2 * i];
    out.max_discrepancy = std::max(out.max_discrepancy, (ql - states[n].head(r)).lpNorm<Eigen::Infinity>());
    out.lagrangian_positions.push_back(ql);
    out.hamiltonian_positions.push_back(states[n].head(r));
  }
  return out;
}

}  // namespace lcel
