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

#include "lcel/dynamics.hpp"

#include <algorithm>
#include <charconv>
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

void max_orders(const Expr& e, std::vector<int>& orders) {
  const Node& n = e.node();
  if (n.kind == Kind::kJet) {
    int& k = orders[static_cast<std::size_t>(n.jet.index - 1)];
    k = std::max(k, n.jet.order);
    return;
  }
  for (const Expr& c : n.children) max_orders(c, orders);
}

std::string coordinate_name(const LagrangianModel& model, int i) {
  return i <= static_cast<int>(model.coordinates.size()) ? model.coordinates[i - 1] : "q" + std::to_string(i);
}

double determinant(const Eigen::MatrixXd& m) { return m.rows() == 0 ? 1.0 : m.determinant(); }

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

Eigen::VectorXd rk4_step(const VectorField& f, double t, const Eigen::VectorXd& y, double dt) {
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + dt / 2, y + dt / 2 * k1);
  const Eigen::VectorXd k3 = f(t + dt / 2, y + dt / 2 * k2);
  const Eigen::VectorXd k4 = f(t + dt, y + dt * k3);
  return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

int step_count(double t0, double t1, double dt) {
  if (!(dt > 0) || !(t1 > t0) || !std::isfinite(t1 - t0)) {
    throw InvalidArgument("time span needs t1 > t0 and dt > 0");
  }
  const long long n = std::llround((t1 - t0) / dt);
  if (n > 100000000) throw InvalidArgument("too many steps");
  return static_cast<int>(std::max(1LL, n));
}

std::vector<Eigen::VectorXd> rk4_integrate(const VectorField& f, const Eigen::VectorXd& y0, double t0,
                                           double t1, double dt) {
  const int n = step_count(t0, t1, dt);
  const double h = (t1 - t0) / n;
  std::vector<Eigen::VectorXd> out{y0};
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) {
    const double t = t0 + k * h;
    Eigen::VectorXd next = rk4_step(f, t, out.back(), h);
    if (!next.allFinite()) throw NumericalFailure("non-finite state", t + h);
    out.push_back(std::move(next));
  }
  return out;
}

Point ExplicitODE::point(const Eigen::VectorXd& state) const {
  Point p(model_.space.dim(), model_.space.max_jet());
  for (std::size_t k = 0; k < layout_.size(); ++k) p.jet(layout_[k]) = state[static_cast<Eigen::Index>(k)];
  for (const auto& [name, value] : model_.parameters) p.set_parameter(name, value);
  return p;
}

Eigen::VectorXd ExplicitODE::top_jets(const Eigen::VectorXd& state, double* det) const {
  const int r = dim();
  const Point p = point(state);
  Eigen::MatrixXd m(r, r);
  Eigen::VectorXd b(r);
  for (int i = 0; i < r; ++i) {
    b[i] = -evaluate(offset_[static_cast<std::size_t>(i)], p);
    for (int j = 0; j < r; ++j) m(i, j) = evaluate(matrix_[static_cast<std::size_t>(i * r + j)], p);
  }
  const double d = determinant(m);
  if (det != nullptr) *det = d;
  if (!(std::abs(d) > kSingularityThreshold)) {
    throw DegenerateSystem("singular top-jet matrix (|det M| = " + shortest(std::abs(d)) + ")");
  }
  return m.partialPivLu().solve(b);
}

Eigen::VectorXd ExplicitODE::derivative(const Eigen::VectorXd& state, double* det) const {
  const Eigen::VectorXd top = top_jets(state, det);
  Eigen::VectorXd out(state.size());
  for (std::size_t k = 0; k < layout_.size(); ++k) {
    const JetKey key = layout_[k];
    const auto idx = static_cast<Eigen::Index>(k);
    out[idx] = key.order + 1 < orders_[static_cast<std::size_t>(key.index - 1)] ? state[idx + 1]
                                                                                : top[key.index - 1];
  }
  return out;
}

Eigen::VectorXd ExplicitODE::pack(const std::map<JetKey, double>& values) const {
  Eigen::VectorXd state(static_cast<Eigen::Index>(layout_.size()));
  for (std::size_t k = 0; k < layout_.size(); ++k) {
    const auto it = values.find(layout_[k]);
    if (it == values.end()) {
      throw InvalidArgument("initial data lacks " + jet_label(model_.coordinates, layout_[k]));
    }
    state[static_cast<Eigen::Index>(k)] = it->second;
  }
  for (const auto& [key, _] : values) {
    if (std::find(layout_.begin(), layout_.end(), key) == layout_.end()) {
      throw InvalidArgument("initial data sets " + jet_label(model_.coordinates, key) +
                            ", which is not part of the state");
    }
  }
  return state;
}

ExplicitODE to_explicit_ode(const EquationSet& eqs, const LagrangianModel& model) {
  if (model.sigma.is_abstract()) throw InvalidArgument("cannot reduce equations with an abstract sigma");
  const int r = model.space.dim();
  if (static_cast<int>(eqs.residuals.size()) != r) throw InvalidArgument("one residual per coordinate expected");

  ExplicitODE ode(eqs, model);
  ode.orders_.assign(static_cast<std::size_t>(r), 0);
  for (const Expr& e : eqs.residuals) max_orders(e, ode.orders_);
  for (int i = 1; i <= r; ++i) {
    const int k = ode.orders_[static_cast<std::size_t>(i - 1)];
    if (k == 0) {
      throw DegenerateSystem("no derivative of " + coordinate_name(model, i) + " occurs in the equations");
    }
    for (int s = 0; s < k; ++s) ode.layout_.push_back({i, s});
  }
  std::vector<JetKey> top;
  for (int j = 1; j <= r; ++j) top.push_back({j, ode.orders_[static_cast<std::size_t>(j - 1)]});

  EquivalenceOptions check;
  check.parameters = model.parameters;
  std::map<JetKey, Expr> zero_top;
  for (const JetKey& key : top) zero_top[key] = integer(0);
  for (int i = 0; i < r; ++i) {
    const Expr& res = eqs.residuals[static_cast<std::size_t>(i)];
    for (int j = 0; j < r; ++j) {
      const Expr mij = normalize(partial(res, top[static_cast<std::size_t>(j)]));
      for (const JetKey& key : top) {
        const Expr second = normalize(partial(mij, key));
        if (!second.is_zero() && !equivalent(second, integer(0), model.space, check)) {
          throw DegenerateSystem("equation " + std::to_string(i + 1) + " is not affine in the top jets");
        }
      }
      ode.matrix_.push_back(mij);
    }
    ode.offset_.push_back(normalize(substitute(res, zero_top)));
  }

  // Structural singularity: |det M| below threshold at every sample.
  SymbolSet symbols;
  for (const Expr& e : ode.matrix_) collect_symbols(e, symbols);
  std::mt19937_64 rng(check.seed);
  bool regular = false;
  for (int trial = 0; trial < 20 && !regular; ++trial) {
    const Point p = random_point(model.space, symbols, model.parameters, check.box, rng);
    Eigen::MatrixXd m(r, r);
    try {
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m(i, j) = evaluate(ode.matrix_[static_cast<std::size_t>(i * r + j)], p);
      }
    } catch (const EvaluationError&) {
      continue;
    }
    regular = std::abs(determinant(m)) > kSingularityThreshold;
  }
  if (!regular) throw DegenerateSystem("top-jet matrix M is singular at every sampled point");
  return ode;
}

Trajectory integrate(const ExplicitODE& ode, const Eigen::VectorXd& init, double t0, double t1, double dt) {
  if (init.size() != static_cast<Eigen::Index>(ode.layout().size())) {
    throw InvalidArgument("initial state has the wrong size");
  }
  const int n = step_count(t0, t1, dt);
  if (n < 4) throw InvalidArgument("need at least four steps");
  const double h = (t1 - t0) / n;

  Trajectory tr;
  tr.states.reserve(static_cast<std::size_t>(n) + 1);
  tr.states.push_back(init);
  tr.min_abs_det = std::numeric_limits<double>::infinity();
  const VectorField f = [&](double, const Eigen::VectorXd& y) { return ode.derivative(y); };
  for (int k = 0; k <= n; ++k) {
    const double t = t0 + k * h;
    tr.times.push_back(t);
    double det = 0.0;
    try {
      ode.top_jets(tr.states.back(), &det);
      if (k < n) tr.states.push_back(rk4_step(f, t, tr.states.back(), h));
    } catch (const DegenerateSystem& e) {
      throw NumericalFailure(e.what(), t);
    } catch (const EvaluationError& e) {
      throw NumericalFailure(e.what(), t);
    }
    tr.min_abs_det = std::min(tr.min_abs_det, std::abs(det));
    if (!tr.states.back().allFinite()) throw NumericalFailure("non-finite state", t + h);
  }

  // Column of each (i, k_i - 1) jet in the state.
  std::vector<Eigen::Index> last;
  for (std::size_t c = 0; c < ode.layout().size(); ++c) {
    const JetKey key = ode.layout()[c];
    if (key.order + 1 == ode.orders()[static_cast<std::size_t>(key.index - 1)]) {
      last.push_back(static_cast<Eigen::Index>(c));
    }
  }
  auto fd = [&](int k, Eigen::Index c) {
    auto v = [&](int m) { return tr.states[static_cast<std::size_t>(m)][c]; };
    if (k >= 2 && k <= n - 2) return (v(k - 2) - 8 * v(k - 1) + 8 * v(k + 1) - v(k + 2)) / (12 * h);
    if (k == 0) return (-25 * v(0) + 48 * v(1) - 36 * v(2) + 16 * v(3) - 3 * v(4)) / (12 * h);
    if (k == 1) return (-3 * v(0) - 10 * v(1) + 18 * v(2) - 6 * v(3) + v(4)) / (12 * h);
    if (k == n - 1) return (3 * v(n) + 10 * v(n - 1) - 18 * v(n - 2) + 6 * v(n - 3) - v(n - 4)) / (12 * h);
    return (25 * v(n) - 48 * v(n - 1) + 36 * v(n - 2) - 16 * v(n - 3) + 3 * v(n - 4)) / (12 * h);
  };
  const auto& residuals = ode.equations().residuals;
  for (int k = 0; k <= n; ++k) {
    Point p = ode.point(tr.states[static_cast<std::size_t>(k)]);
    for (std::size_t j = 0; j < last.size(); ++j) {
      p.jet(static_cast<int>(j) + 1, ode.orders()[j]) = fd(k, last[j]);
    }
    double worst = 0.0;
    for (const Expr& r : residuals) worst = std::max(worst, std::abs(evaluate(r, p)));
    tr.residuals.push_back(worst);
    tr.max_residual = std::max(tr.max_residual, worst);
  }
  return tr;
}

std::vector<std::string> csv_header(const ExplicitODE& ode) {
  std::vector<std::string> out{"t"};
  for (const JetKey& key : ode.layout()) {
    std::string name = coordinate_name(ode.model(), key.index);
    if (key.order > 0) name += "_d" + std::to_string(key.order);
    out.push_back(name);
  }
  out.push_back("residual_max");
  return out;
}

void write_csv(std::ostream& out, const ExplicitODE& ode, const Trajectory& trajectory) {
  const auto header = csv_header(ode);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (std::size_t n = 0; n < trajectory.times.size(); ++n) {
    out << shortest(trajectory.times[n]);
    for (Eigen::Index c = 0; c < trajectory.states[n].size(); ++c) out << ',' << shortest(trajectory.states[n][c]);
    out << ',' << shortest(trajectory.residuals[n]) << '\n';
  }
}

}  // namespace lcel
