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

// Acceptance gate: one PASS/FAIL line per criterion, each with its runtime
// budget. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lcel/calculus.hpp"
#include "lcel/cli.hpp"
#include "lcel/combinatorics.hpp"
#include "lcel/dynamics.hpp"
#include "lcel/equivalence.hpp"
#include "lcel/euler_lagrange.hpp"
#include "lcel/hamiltonian.hpp"
#include "lcel/normalize.hpp"
#include "lcel/parse.hpp"
#include "lcel/variational.hpp"
#include "support/displays.hpp"
#include "support/random_expr.hpp"

namespace lcel {
namespace {

using testing::ph;
using testing::qd;

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kXY{"x", "y"};
const char* const kChiral = "-lambda/2*(x'*y'' - y'*x'') + m/2*(x'^2 + y'^2)";

// Collects failed sub-checks for one criterion.
struct Report {
  std::vector<std::string> failures;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

LagrangianModel make_model(int dim, int order, const std::string& lagrangian, const std::vector<std::string>& coords,
                           ConformalFactor sigma = ConformalFactor::zero()) {
  JetSpace space(dim, order);
  return LagrangianModel{space, parse_expression(lagrangian, space, coords), std::move(sigma), coords, {}};
}

ConformalFactor angle_factor() {
  return ConformalFactor::concrete(parse_expression("2*atan2(y,x)", JetSpace(2, 2), kXY));
}

bool same(const Expr& a, const Expr& b, const JetSpace& space, double tol = 1e-9,
          const std::map<std::string, double>& params = {}) {
  EquivalenceOptions o;
  o.tolerance = tol;
  o.parameters = params;
  return equivalent(a, b, space, o).equivalent;
}

void partition_counts(Report& r) {
  const std::vector<std::size_t> want{1, 2, 5, 15, 52, 203};
  for (int m = 1; m <= 6; ++m) {
    const std::size_t got = set_partitions(m).size();
    r.check(got == want[static_cast<std::size_t>(m - 1)], "m=" + std::to_string(m) + " gave " + std::to_string(got));
  }
}

void displayed_formulas(Report& r) {
  const auto abstract = ConformalFactor::abstract();
  const JetSpace space3(3, 1, 4);
  const std::vector<int> i{1};
  const std::vector<int> ij{1, 2};
  const std::vector<int> ijk{1, 2, 3};
  r.check(same(phi(abstract, i), testing::phi1_display(1), space3), "Phi_1");
  r.check(same(phi(abstract, ij), testing::phi2_display(1, 2), space3), "Phi_2");
  r.check(same(phi(abstract, ijk), testing::phi3_display(1, 2, 3), space3), "Phi_3");

  r.check(same(bell_polynomial(1, 1, i), qd(1, 1), space3), "B_{1,1}");
  r.check(same(bell_polynomial(2, 1, i), qd(1, 2), space3), "B_{2,1}");
  r.check(same(bell_polynomial(2, 2, ij), qd(1, 1) * qd(2, 1), space3), "B_{2,2}");
  r.check(same(bell_polynomial(3, 1, i), qd(1, 3), space3), "B_{3,1}");
  r.check(same(bell_polynomial(3, 2, ij), integer(3) * qd(1, 2) * qd(2, 1), space3), "B_{3,2}");
  r.check(same(bell_polynomial(3, 3, ijk), qd(1, 1) * qd(2, 1) * qd(3, 1), space3), "B_{3,3}");

  for (int dim = 1; dim <= 3; ++dim) {
    const JetSpace space(dim, 1, 4);
    const std::string d = " dim=" + std::to_string(dim);
    r.check(same(calB(1, abstract, space), testing::calB1_display(dim), space), "calB_1" + d);
    r.check(same(calB(2, abstract, space), testing::calB2_display(dim), space), "calB_2" + d);
    r.check(same(calB(3, abstract, space), testing::calB3_display(dim), space), "calB_3" + d);
  }

  const auto m1 = make_model(2, 1, "1/2*m*(x'^2 + y'^2) - x*y + x'*y^2", kXY, abstract);
  const auto m2 = make_model(2, 2, "x''^2*y + x'*y'' + x*y'^2 + y''*y'*x", kXY, abstract);
  const auto m3 = make_model(2, 3, "x'''^2 + x'''*y'*x + y'''*x'' + y''^2 - x*y", kXY, abstract);
  const auto a1 = conformal_rhs(m1);
  const auto a2 = conformal_rhs(m2);
  const auto a3 = conformal_rhs(m3);
  for (int k = 1; k <= 2; ++k) {
    const std::string idx = "[" + std::to_string(k) + "]";
    r.check(same(a1[k - 1], testing::a1_display(m1.lagrangian, 2, k), m1.space), "A^1" + idx);
    r.check(same(a2[k - 1], testing::a2_display(m2.lagrangian, m2.space, k), m2.space), "A^2" + idx);
    r.check(same(a3[k - 1], testing::a3_display(m3.lagrangian, m3.space, k), m3.space), "A^3" + idx);
  }
}

void calB_oracle_equivalence(Report& r) {
  std::mt19937_64 rng(7);
  int cases = 0;
  for (int dim = 1; dim <= 3; ++dim) {
    const JetSpace space(dim, 1, 6);
    for (int k = 0; k < 10; ++k) {
      const auto sigma = ConformalFactor::concrete(testing::random_sigma(rng, dim, 3, 3));
      for (int s = 1; s <= 5; ++s) {
        ++cases;
        r.check(same(calB(s, sigma, space), calB_oracle(s, sigma, space), space),
                "dim=" + std::to_string(dim) + " sigma#" + std::to_string(k) + " s=" + std::to_string(s));
      }
    }
  }
  r.detail = std::to_string(cases) + " cases";
}

// Random suite: every (n, dim) with n <= 4, dim <= 2, three draws each.
std::vector<LagrangianModel> random_models(bool with_sigma) {
  std::vector<LagrangianModel> out;
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int dim = 1; dim <= 2; ++dim) {
      for (int k = 0; k < 3; ++k) {
        const JetSpace space(dim, n);
        Expr lagrangian = testing::random_lagrangian(rng, dim, n, 2, 5);
        const Expr sigma = testing::random_sigma(rng, dim, 3, 3);
        out.push_back(LagrangianModel{space, lagrangian,
                                      with_sigma ? ConformalFactor::concrete(sigma) : ConformalFactor::zero(), {}, {}});
      }
    }
  }
  return out;
}

void main_theorem(Report& r) {
  const auto models = random_models(true);
  for (std::size_t k = 0; k < models.size(); ++k) {
    const auto& model = models[k];
    const auto expanded = lc_el_expanded(model);
    const auto compact = lc_el_compact(model);
    for (int i = 0; i < model.space.dim(); ++i) {
      r.check(same(exp(model.sigma.sigma()) * compact.residuals[static_cast<std::size_t>(i)],
                   expanded.residuals[static_cast<std::size_t>(i)], model.space, 1e-8),
              "model#" + std::to_string(k) + " n=" + std::to_string(model.space.order()) + " i=" + std::to_string(i));
    }
  }
  r.detail = std::to_string(models.size()) + " models";
}

void trivial_factor_collapse(Report& r) {
  const auto models = random_models(false);
  for (std::size_t k = 0; k < models.size(); ++k) {
    for (const Expr& a : conformal_rhs(models[k])) r.check(a.is_zero(), "A nonzero, model#" + std::to_string(k));
    r.check(lc_el_expanded(models[k]).residuals == classical_el(models[k]).residuals,
            "expanded != classical, model#" + std::to_string(k));
  }
  r.detail = std::to_string(models.size()) + " models";
}

void chiral_oscillator(Report& r) {
  const std::map<std::string, double> params{{"lambda", 1.3}, {"m", 0.7}};
  const auto classical = classical_el(make_model(2, 2, kChiral, kXY));
  const auto model = make_model(2, 2, kChiral, kXY, ConformalFactor::abstract());
  const auto expanded = lc_el_expanded(model);
  for (int i = 1; i <= 2; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    r.check(classical.residuals[static_cast<std::size_t>(i - 1)] == normalize(testing::chiral_classical_display(i)),
            "classical" + idx);
    r.check(same(expanded.residuals[static_cast<std::size_t>(i - 1)], testing::chiral_lc_display(i), model.space, 1e-9,
                 params),
            "locally conformal" + idx);
  }
}

void variational(Report& r) {
  std::ostringstream detail;
  detail.precision(2);
  auto run = [&](const std::string& name, const LagrangianModel& model, const Curve& curve, const Curve& delta,
                 double tol) {
    const auto c = variational_fd_check(model, curve, delta);
    detail << name << " " << std::scientific << c.discrepancy << " (quad " << c.quadrature_estimate << ") ";
    r.check(c.discrepancy <= tol, name);
  };
  run("free", make_model(1, 1, "1/2*x'^2", kX), polynomial_curve({{0.3, 1.2}}), bump(0, 1, 1, {1.0}), 1e-6);
  auto toy = make_model(1, 1, "1/2*x'^2", kX, ConformalFactor::concrete(jet(1, 0)));
  run("toy", toy, polynomial_curve({{0.2, 0.5, -0.7, 0.3}}), bump(0, 1, 1, {1.0}), 1e-5);
  auto chiral = make_model(2, 2, kChiral, kXY, angle_factor());
  chiral.parameters = {{"lambda", 1.0}, {"m", 1.0}};
  run("chiral", chiral, circle_curve(0.4, 0.3, 1.0, 1.5), bump(0, 1, 2, {0.8, -0.5}), 1e-4);
  r.detail = detail.str();
  if (!r.detail.empty()) r.detail.pop_back();
}

void dynamics(Report& r) {
  const auto oscillator = make_model(1, 1, "1/2*x'^2 - 1/2*x^2", kX);
  const ExplicitODE ho = to_explicit_ode(classical_el(oscillator), oscillator);
  const auto ho_init = ho.pack({{{1, 0}, 1.0}, {{1, 1}, 0.0}});
  const double e1 = std::abs(integrate(ho, ho_init, 0, 10, 0.02).states.back()[0] - std::cos(10.0));
  const double e2 = std::abs(integrate(ho, ho_init, 0, 10, 0.01).states.back()[0] - std::cos(10.0));
  const double ratio = e1 / e2;
  r.check(ratio >= 12 && ratio <= 20, "step-halving ratio " + std::to_string(ratio));

  auto chiral = make_model(2, 2, kChiral, kXY, angle_factor());
  chiral.parameters = {{"lambda", 1.0}, {"m", 1.0}};
  const ExplicitODE ode = to_explicit_ode(lc_el_expanded(chiral), chiral);
  const auto init =
      ode.pack({{{1, 0}, 1.0}, {{1, 1}, 0.0}, {{1, 2}, -0.5}, {{2, 0}, 0.5}, {{2, 1}, 0.8}, {{2, 2}, 0.0}});
  const Trajectory tr = integrate(ode, init, 0, 1, 1e-4);
  r.check(tr.max_residual <= 1e-6, "chiral residual " + std::to_string(tr.max_residual));
  std::ostringstream detail;
  detail.precision(3);
  detail << "ratio " << ratio << ", chiral max residual " << std::scientific << tr.max_residual;
  r.detail = detail.str();
}

void legendre_bridge(Report& r) {
  auto free = make_model(2, 1, "1/2*(x'^2 + y'^2)", kXY,
                         ConformalFactor::concrete(parse_expression("a*x", JetSpace(2, 1), kXY)));
  free.parameters = {{"a", 0.7}};
  const auto a = lagrangian_hamiltonian_crosscheck(free, {{{1, 0}, 0.4}, {{1, 1}, 0.5}, {{2, 0}, -0.3}, {{2, 1}, 0.9}},
                                                   0, 1, 1e-3);
  const auto osc = make_model(2, 1, "1/2*(x'^2 + y'^2) - 1/2*(x^2 + y^2)", kXY,
                              ConformalFactor::concrete(parse_expression("x^2/2 + x*y - y^2/3", JetSpace(2, 1), kXY)));
  const auto b = lagrangian_hamiltonian_crosscheck(osc, {{{1, 0}, 0.5}, {{1, 1}, -0.2}, {{2, 0}, 0.1}, {{2, 1}, 0.6}},
                                                   0, 1, 1e-3);
  r.check(a.max_discrepancy <= 1e-6, "linear factor");
  r.check(b.max_discrepancy <= 1e-6, "quadratic factor");
  std::ostringstream detail;
  detail.precision(2);
  detail << std::scientific << "discrepancies " << a.max_discrepancy << ", " << b.max_discrepancy;
  r.detail = detail.str();
}

void cli_determinism(Report& r) {
  auto run = [](const std::vector<std::string>& args, std::string& out) {
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(args, o, e);
    out = o.str();
    return code;
  };
  std::string first;
  std::string second;
  const std::string chiral = std::string(LCEL_MODELS_DIR) + "/chiral_lc.lcel";
  run({"--seed", "42", "verify", chiral}, first);
  run({"--seed", "42", "verify", chiral}, second);
  r.check(!first.empty() && first == second, "verify --seed 42 not byte-identical");
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(LCEL_MODELS_DIR)) {
    if (entry.path().extension() != ".lcel") continue;
    ++count;
    std::string out;
    r.check(run({"verify", entry.path().string()}, out) == cli::kSuccess, entry.path().filename().string());
  }
  r.check(count >= 5, "expected at least five bundled models");
  r.detail = std::to_string(count) + " models verified";
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Report&)> body;
};

}  // namespace
}  // namespace lcel

int main() {
  using lcel::Criterion;
  const std::vector<Criterion> criteria{
      {1, "partition counts", 1, lcel::partition_counts},
      {2, "displayed formulas", 10, lcel::displayed_formulas},
      {3, "calB oracle equivalence", 30, lcel::calB_oracle_equivalence},
      {4, "weighted compact matches expanded", 60, lcel::main_theorem},
      {5, "trivial factor collapse", 60, lcel::trivial_factor_collapse},
      {6, "chiral oscillator", 5, lcel::chiral_oscillator},
      {7, "variational finite differences", 10, lcel::variational},
      {8, "dynamics", 30, lcel::dynamics},
      {9, "Legendre bridge", 10, lcel::legendre_bridge},
      {10, "CLI determinism", 60, lcel::cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    lcel::Report report;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(report);
    } catch (const std::exception& e) {
      report.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) report.failures.push_back("over budget");
    const bool ok = report.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s of %.0f s)", ok ? "PASS" : "FAIL", c.id, c.name, seconds,
                c.budget_seconds);
    if (!report.detail.empty()) std::printf(" [%s]", report.detail.c_str());
    for (const auto& f : report.failures) std::printf(" {%s}", f.c_str());
    std::printf("\n");
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
