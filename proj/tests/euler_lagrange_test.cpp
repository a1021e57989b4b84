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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "lcel/calculus.hpp"
#include "lcel/equivalence.hpp"
#include "lcel/errors.hpp"
#include "lcel/euler_lagrange.hpp"
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

LagrangianModel make_model(int dim, int order, const std::string& lagrangian,
                           const std::vector<std::string>& coords,
                           ConformalFactor sigma = ConformalFactor::zero()) {
  JetSpace space(dim, order);
  return LagrangianModel{space, parse_expression(lagrangian, space, coords), std::move(sigma), coords,
                         {}};
}

EquivalenceOptions params_options() {
  EquivalenceOptions o;
  o.parameters = {{"lambda", 1.3}, {"m", 0.7}};
  return o;
}

TEST(ClassicalEl, FreeParticle) {
  const auto model = make_model(1, 1, "1/2*x'^2", kX);
  const EquationSet eqs = classical_el(model);
  ASSERT_EQ(eqs.residuals.size(), 1u);
  EXPECT_EQ(eqs.residuals[0], normalize(-jet(1, 2)));
  EXPECT_EQ(eqs.form, EquationForm::kClassical);
  EXPECT_EQ(eqs.max_jet_order, 2);
}

TEST(ClassicalEl, SecondOrderFreeLagrangian) {
  const auto model = make_model(1, 2, "1/2*x''^2", kX);
  EXPECT_EQ(classical_el(model).residuals[0], jet(1, 4));
}

TEST(ClassicalEl, ChiralOscillator) {
  const auto model = make_model(2, 2, kChiral, kXY);
  const EquationSet eqs = classical_el(model);
  for (int i = 1; i <= 2; ++i) EXPECT_EQ(eqs.residuals[i - 1], normalize(testing::chiral_classical_display(i)));
  EXPECT_EQ(eqs.max_jet_order, 3);
}

TEST(ConformalRhs, FirstOrderDisplay) {
  const auto model = make_model(2, 1, "1/2*m*(x'^2 + y'^2) - x*y + x'*y^2", kXY, ConformalFactor::abstract());
  const auto rhs = conformal_rhs(model);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_TRUE(equivalent(rhs[i - 1], testing::a1_display(model.lagrangian, 2, i), model.space, params_options()));
  }
}

TEST(ConformalRhs, SecondOrderDisplay) {
  const auto model = make_model(2, 2, "x''^2*y + x'*y'' + x*y'^2 + y''*y'*x", kXY, ConformalFactor::abstract());
  const auto rhs = conformal_rhs(model);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_TRUE(equivalent(rhs[i - 1], testing::a2_display(model.lagrangian, model.space, i), model.space));
  }
}

TEST(ConformalRhs, ThirdOrderDisplay) {
  const auto model =
      make_model(2, 3, "x'''^2 + x'''*y'*x + y'''*x'' + y''^2 - x*y", kXY, ConformalFactor::abstract());
  const auto rhs = conformal_rhs(model);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_TRUE(equivalent(rhs[i - 1], testing::a3_display(model.lagrangian, model.space, i), model.space));
  }
}

TEST(ConformalRhs, VanishesForTrivialFactor) {
  for (int n = 1; n <= 4; ++n) {
    std::mt19937_64 rng(n);
    const JetSpace space(2, n);
    const LagrangianModel model{space, testing::random_lagrangian(rng, 2, n, 2, 5), ConformalFactor::zero(), {}, {}};
    for (const Expr& a : conformal_rhs(model)) EXPECT_TRUE(a.is_zero());
    EXPECT_EQ(lc_el_expanded(model).residuals, classical_el(model).residuals);
  }
}

TEST(ConformalRhs, OrderCollapse) {
  const auto low = make_model(2, 1, "1/2*(x'^2 + y'^2) - x^2*y", kXY, ConformalFactor::abstract());
  const auto high = make_model(2, 2, "1/2*(x'^2 + y'^2) - x^2*y", kXY, ConformalFactor::abstract());
  const auto a = conformal_rhs(low);
  const auto b = conformal_rhs(high);
  for (int i = 0; i < 2; ++i) EXPECT_TRUE(equivalent(a[i], b[i], high.space));
}

TEST(ConformalRhs, PairingOrderIsImmaterial) {
  const auto model = make_model(2, 3, "x'''*y'*x + y'''*x''^2", kXY, ConformalFactor::abstract());
  EXPECT_EQ(conformal_rhs(model, SlotPairing::kHighestFirst), conformal_rhs(model, SlotPairing::kLowestFirst));
}

TEST(LcElExpanded, ChiralOscillatorDisplay) {
  const auto model = make_model(2, 2, kChiral, kXY, ConformalFactor::abstract());
  const EquationSet eqs = lc_el_expanded(model);
  for (int i = 1; i <= 2; ++i) {
    const Expr display = testing::chiral_lc_display(i);
    EXPECT_TRUE(equivalent(eqs.residuals[i - 1], display, model.space, params_options()));
    EXPECT_EQ(eqs.residuals[i - 1], normalize(display));

    // Printed literally, the display carries m/2 q'_i inside the momentum
    // factor; the true residual exceeds it by phi_l q'^l (m/2) q'_i.
    const Expr literal = testing::chiral_lc_display(i, Rational(1, 2));
    EXPECT_FALSE(equivalent(eqs.residuals[i - 1], literal, model.space, params_options()));
    std::vector<Expr> phi_qd;
    for (int l = 1; l <= 2; ++l) phi_qd.push_back(ph({l}) * qd(l, 1));
    EXPECT_TRUE(equivalent(eqs.residuals[i - 1] - literal,
                           sum(phi_qd) * constant(Rational(1, 2)) * parameter("m") * qd(i, 1), model.space,
                           params_options()));
  }
}

TEST(LcElExpanded, HasNoExponentials) {
  const auto model = make_model(2, 2, kChiral, kXY,
                                ConformalFactor::concrete(parse_expression("2*atan2(y,x)", JetSpace(2, 2), kXY)));
  for (const Expr& r : lc_el_expanded(model).residuals) EXPECT_FALSE(r.has_exp());
  for (const Expr& r : lc_el_compact(model).residuals) EXPECT_TRUE(r.has_exp());
}

TEST(LcElCompact, SecondOrderWeightedForm) {
  const auto model = make_model(1, 2, "x''^2*x + x'^3", kX, ConformalFactor::abstract());
  const Expr L = model.lagrangian;
  const Expr w = exp(-ph({}));
  const Expr want = w * partial(L, {1, 0}) - total_derivative(w * partial(L, {1, 1}), model.space) +
                    total_derivative(w * partial(L, {1, 2}), model.space, 2) - w * ph({1}) * L;
  EXPECT_TRUE(equivalent(lc_el_compact(model).residuals[0], want, model.space));
}

TEST(LcElCompact, MatchesClassicalForTrivialFactor) {
  const auto model = make_model(2, 2, kChiral, kXY);
  EXPECT_EQ(lc_el_compact(model).residuals, classical_el(model).residuals);
}

class ReductionProperty : public ::testing::TestWithParam<int> {};

TEST_P(ReductionProperty, WeightedCompactMatchesExpanded) {
  const int seed = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  const int n = 1 + seed % 3;
  const int dim = 1 + (seed / 3) % 2;
  const JetSpace space(dim, n);
  const bool abstract = seed % 2 == 0;
  const LagrangianModel model{space, testing::random_lagrangian(rng, dim, n, 2, 5),
                              abstract ? ConformalFactor::abstract()
                                       : ConformalFactor::concrete(testing::random_sigma(rng, dim, 2, 3)),
                              {}, {}};
  const EquationSet expanded = lc_el_expanded(model);
  const EquationSet compact = lc_el_compact(model);
  EquivalenceOptions options;
  options.tolerance = 1e-8;
  for (int i = 0; i < dim; ++i) {
    EXPECT_TRUE(equivalent(exp(model.sigma.sigma()) * compact.residuals[i], expanded.residuals[i], space, options))
        << "n=" << n << " dim=" << dim << " i=" << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Random, ReductionProperty, ::testing::Range(1, 13));

TEST(Structure, ThirdOrderText) {
  const std::string s = conformal_rhs_structure(3, Format::kText);
  EXPECT_EQ(s,
            "phi_i L + B_1 dL/dq'^i - (B_2 + 2 B_1 d/dt) dL/dq''^i + "
            "(B_3 + 3 B_2 d/dt + 3 B_1 d^2/dt^2) dL/dq'''^i");
  EXPECT_NE(conformal_rhs_structure(3, Format::kLatex).find("\\mathcal{B}_{3} + 3\\mathcal{B}_{2} \\frac{d}{dt}"),
            std::string::npos);
}

TEST(Model, Validation) {
  const JetSpace space(1, 1);
  LagrangianModel bad_order{space, jet(1, 2), ConformalFactor::zero(), {}, {}};
  EXPECT_THROW(bad_order.validate(), InvalidArgument);
  LagrangianModel bad_names{space, jet(1, 1), ConformalFactor::zero(), {"x", "y"}, {}};
  EXPECT_THROW(bad_names.validate(), InvalidArgument);
  LagrangianModel bad_symbols{space, sigma_symbol({1}), ConformalFactor::zero(), {}, {}};
  EXPECT_THROW(bad_symbols.validate(), InvalidArgument);
  EXPECT_THROW(ConformalFactor::concrete(jet(1, 1)), InvalidArgument);
}

TEST(Variational, FreeParticleStraightLine) {
  const auto model = make_model(1, 1, "1/2*x'^2", kX);
  const auto r = variational_fd_check(model, polynomial_curve({{0.3, 1.2}}), bump(0, 1, 1, {1.0}));
  EXPECT_LE(r.discrepancy, 1e-6);
}

TEST(Variational, ConformalToyPolynomialCurve) {
  auto model = make_model(1, 1, "1/2*x'^2", kX);
  model.sigma = ConformalFactor::concrete(jet(1, 0));
  const auto r = variational_fd_check(model, polynomial_curve({{0.2, 0.5, -0.7, 0.3}}), bump(0, 1, 1, {1.0}));
  EXPECT_GT(std::abs(r.residual_pairing), 1e-3);
  EXPECT_LE(r.discrepancy, 1e-5);
  EXPECT_LE(r.quadrature_estimate, 1e-8);
}

TEST(Variational, ChiralLoopAvoidingOrigin) {
  auto model = make_model(2, 2, kChiral, kXY,
                          ConformalFactor::concrete(parse_expression("2*atan2(y,x)", JetSpace(2, 2), kXY)));
  model.parameters = {{"lambda", 1.0}, {"m", 1.0}};
  const auto r = variational_fd_check(model, circle_curve(0.4, 0.3, 1.0, 1.5), bump(0, 1, 2, {0.8, -0.5}));
  EXPECT_GT(std::abs(r.residual_pairing), 1e-3);
  EXPECT_LE(r.discrepancy, 1e-4);
}

TEST(Variational, WrongResidualIsDetected) {
  // Pair against the classical residual instead: the conformal terms are missed.
  auto model = make_model(1, 1, "1/2*x'^2", kX);
  model.sigma = ConformalFactor::concrete(jet(1, 0));
  auto plain = model;
  plain.sigma = ConformalFactor::zero();
  const auto curve = polynomial_curve({{0.2, 0.5, -0.7, 0.3}});
  const auto with = variational_fd_check(model, curve, bump(0, 1, 1, {1.0}));
  const auto without = variational_fd_check(plain, curve, bump(0, 1, 1, {1.0}));
  EXPECT_GT(std::abs(with.action_derivative - without.action_derivative), 1e-3);
}

TEST(Curves, BumpVanishesWithDerivativesAtEnds) {
  const Curve b = bump(0.0, 1.0, 2, {1.0});
  for (int s = 0; s <= 2; ++s) {
    EXPECT_NEAR(b(1, s, 0.0), 0.0, 1e-14);
    EXPECT_NEAR(b(1, s, 1.0), 0.0, 1e-14);
  }
  EXPECT_NEAR(b(1, 0, 0.5), std::pow(0.25, 3), 1e-14);
  const Curve c = circle_curve(0, 0, 2.0, 3.0);
  EXPECT_NEAR(c(1, 2, 0.1), -9.0 * c(1, 0, 0.1), 1e-12);
}

}  // namespace
}  // namespace lcel
