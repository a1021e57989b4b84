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

#include "lcel/variational.hpp"

#include <cmath>
#include <memory>

#include "lcel/errors.hpp"
#include "lcel/evaluate.hpp"

namespace lcel {
namespace {

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double poly_derivative(const std::vector<double>& c, int order, double t) {
  double value = 0.0;
  double tk = 1.0;
  for (std::size_t k = static_cast<std::size_t>(order); k < c.size(); ++k) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(k - static_cast<std::size_t>(j));
    value += c[k] * falling * tk;
    tk *= t;
  }
  return value;
}

// Composite Simpson rule on n (even) intervals.
double simpson(const std::function<double(double)>& f, double t0, double t1, int n) {
  const double dt = (t1 - t0) / n;
  double acc = f(t0) + f(t1);
  for (int k = 1; k < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f(t0 + k * dt);
  return acc * dt / 3.0;
}

}  // namespace

Curve polynomial_curve(std::vector<std::vector<double>> coefficients) {
  auto c = std::make_shared<const std::vector<std::vector<double>>>(std::move(coefficients));
  return [c](int index, int order, double t) {
    if (index < 1 || index > static_cast<int>(c->size())) return 0.0;
    return poly_derivative((*c)[index - 1], order, t);
  };
}

Curve circle_curve(double cx, double cy, double radius, double omega, double phase) {
  return [=](int index, int order, double t) {
    // d^k/dt^k cos(u) = cos(u + k pi/2), same shift for sin.
    const double u = omega * t + phase + order * M_PI / 2;
    const double scale = radius * std::pow(omega, order);
    if (index == 1) return (order == 0 ? cx : 0.0) + scale * std::cos(u);
    if (index == 2) return (order == 0 ? cy : 0.0) + scale * std::sin(u);
    return 0.0;
  };
}

Curve bump(double a, double b, int n, std::vector<double> direction) {
  std::vector<double> base{-a * b, a + b, -1.0};
  std::vector<double> poly{1.0};
  for (int k = 0; k <= n; ++k) poly = poly_multiply(poly, base);
  std::vector<std::vector<double>> coefficients;
  for (double d : direction) {
    std::vector<double> c = poly;
    for (double& x : c) x *= d;
    coefficients.push_back(std::move(c));
  }
  return polynomial_curve(std::move(coefficients));
}

Point curve_point(const LagrangianModel& model, const Curve& curve, double t) {
  Point p(model.space.dim(), model.space.max_jet());
  for (int i = 1; i <= model.space.dim(); ++i) {
    for (int s = 0; s <= model.space.max_jet(); ++s) p.jet(i, s) = curve(i, s, t);
  }
  for (const auto& [name, value] : model.parameters) p.set_parameter(name, value);
  return p;
}

VariationalCheck variational_fd_check(const LagrangianModel& model, const Curve& curve,
                                      const Curve& perturbation, const VariationalOptions& options) {
  if (model.sigma.is_abstract()) {
    throw InvalidArgument("variational_fd_check needs a concrete sigma");
  }
  if (!(options.t1 > options.t0) || !(options.grid > 0) || !(options.h > 0)) {
    throw InvalidArgument("variational_fd_check: need t1 > t0, grid > 0 and h > 0");
  }
  int n = static_cast<int>(std::llround((options.t1 - options.t0) / options.grid));
  n = std::max(4, n + n % 2);
  if (n % 4 != 0) n += 2;

  const Expr weighted = exp(-model.sigma.sigma()) * model.lagrangian;
  const EquationSet compact = lc_el_compact(model);

  auto shifted = [&](double eps) -> Curve {
    return [&, eps](int i, int s, double t) { return curve(i, s, t) + eps * perturbation(i, s, t); };
  };
  auto action = [&](double eps, int intervals) {
    const Curve c = shifted(eps);
    return simpson([&](double t) { return evaluate(weighted, curve_point(model, c, t)); }, options.t0,
                   options.t1, intervals);
  };
  auto quotient = [&](int intervals) {
    return (action(options.h, intervals) - action(-options.h, intervals)) / (2 * options.h);
  };
  auto pairing = [&](int intervals) {
    return simpson(
        [&](double t) {
          const Point p = curve_point(model, curve, t);
          double acc = 0.0;
          for (int i = 1; i <= model.space.dim(); ++i) {
            acc += evaluate(compact.residuals[i - 1], p) * perturbation(i, 0, t);
          }
          return acc;
        },
        options.t0, options.t1, intervals);
  };

  VariationalCheck out;
  out.action_derivative = quotient(n);
  out.residual_pairing = pairing(n);
  out.discrepancy = std::abs(out.action_derivative - out.residual_pairing);
  out.quadrature_estimate = std::max(std::abs(out.action_derivative - quotient(n / 2)),
                                     std::abs(out.residual_pairing - pairing(n / 2))) / 15.0;
  return out;
}

}  // namespace lcel
