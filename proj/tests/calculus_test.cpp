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
#include "lcel/evaluate.hpp"
#include "lcel/normalize.hpp"
#include "lcel/parse.hpp"
#include "support/random_expr.hpp"

namespace lcel {
namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kXY{"x", "y"};

const char* const kChiral = "-lambda/2*(x'*y'' - y'*x'') + m/2*(x'^2 + y'^2)";

// Levi-Civita symbol with eps_12 = 1.
int eps(int i, int j) { return i == j ? 0 : (i == 1 ? 1 : -1); }

TEST(Partial, PolynomialRule) {
  const JetSpace space(1, 1);
  const Expr e = parse_expression("1/2*x'^2", space, kX);
  EXPECT_EQ(normalize(partial(e, space, {1, 1})), jet(1, 1));
  EXPECT_TRUE(partial(e, space, {1, 0}).is_zero());
  EXPECT_THROW(partial(e, space, {2, 0}), InvalidArgument);
}

TEST(Partial, ChiralOscillatorMomenta) {
  const JetSpace space(2, 2);
  const Expr L = parse_expression(kChiral, space, kXY);
  const Expr lambda = parameter("lambda");
  const Expr m = parameter("m");
  for (int i = 1; i <= 2; ++i) {
    std::vector<Expr> wrt_acc;
    std::vector<Expr> wrt_vel{m * jet(i, 1)};
    for (int j = 1; j <= 2; ++j) {
      wrt_acc.push_back(constant(Rational(eps(i, j), 2)) * lambda * jet(j, 1));
      wrt_vel.push_back(constant(Rational(-eps(i, j), 2)) * lambda * jet(j, 2));
    }
    EXPECT_EQ(normalize(partial(L, {i, 2})), normalize(sum(wrt_acc)));
    EXPECT_EQ(normalize(partial(L, {i, 1})), normalize(sum(wrt_vel)));
  }
}

TEST(Partial, AbstractSigmaSymbolsDependOnBaseCoordinates) {
  const Expr s = sigma_symbol({1});
  EXPECT_EQ(partial(s, {2, 0}), sigma_symbol({1, 2}));
  EXPECT_TRUE(partial(s, {2, 1}).is_zero());
}

TEST(TotalDerivative, Prolongation) {
  const JetSpace space(3, 2);
  for (int i = 1; i <= space.dim(); ++i) {
    for (int s = 0; s < space.max_jet(); ++s) {
      EXPECT_EQ(total_derivative(jet(i, s), space), jet(i, s + 1));
    }
  }
  EXPECT_THROW(total_derivative(jet(1, space.max_jet()), space), JetOrderOverflow);
}

TEST(TotalDerivative, ExponentialWeightMatchesBellExamples) {
  const JetSpace space(2, 2);
  const Expr w = exp(-sigma_symbol({}));
  std::vector<Expr> b1;
  std::vector<Expr> b2;
  for (int i = 1; i <= 2; ++i) {
    b1.push_back(-(sigma_symbol({i}) * jet(i, 1)));
    b2.push_back(-(sigma_symbol({i}) * jet(i, 2)));
    for (int j = 1; j <= 2; ++j) {
      b2.push_back((sigma_symbol({i}) * sigma_symbol({j}) - sigma_symbol({i, j})) * jet(i, 1) *
                   jet(j, 1));
    }
  }
  EXPECT_EQ(total_derivative(w, space, 1), normalize(w * sum(b1)));
  EXPECT_EQ(total_derivative(w, space, 2), normalize(w * sum(b2)));
}

TEST(TotalDerivative, AngleRule) {
  const JetSpace space(2, 1);
  const Expr theta = angle(jet(2, 0), jet(1, 0));
  const Expr expected = quotient(jet(1, 0) * jet(2, 1) - jet(2, 0) * jet(1, 1),
                                 power(jet(1, 0), 2) + power(jet(2, 0), 2));
  EXPECT_TRUE(equivalent(total_derivative(theta, space), expected, space));
}

class CalculusProperties : public ::testing::TestWithParam<int> {};

TEST_P(CalculusProperties, CommutatorIdentity) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const JetSpace space(2, 2);
  const Expr e = testing::random_polynomial(rng, 2, 3, 3, 6);
  for (int i = 1; i <= 2; ++i) {
    for (int s = 1; s <= 3; ++s) {
      const Expr lhs = partial(total_derivative(e, space), {i, s}) -
                       total_derivative(partial(e, {i, s}), space);
      EXPECT_TRUE(equivalent(lhs, partial(e, {i, s - 1}), space)) << "i=" << i << " s=" << s;
      EXPECT_TRUE(normalize(lhs - partial(e, {i, s - 1})).is_zero());
    }
  }
}

TEST_P(CalculusProperties, Leibniz) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 77);
  const JetSpace space(2, 2);
  const Expr a = testing::random_smooth(rng, 2, 2);
  const Expr b = testing::random_smooth(rng, 2, 2);
  const Expr lhs = total_derivative(a * b, space);
  const Expr rhs = total_derivative(a, space) * b + a * total_derivative(b, space);
  EXPECT_TRUE(equivalent(lhs, rhs, space));
}

TEST_P(CalculusProperties, PartialsMatchCentralDifferences) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 991);
  const JetSpace space(2, 1);
  const Expr e = testing::random_smooth(rng, 2, 2) + angle(jet(2, 0), jet(1, 0));
  SymbolSet symbols;
  collect_symbols(e, symbols);
  Point p = random_point(space, symbols, {}, SamplingBox{}, rng);
  for (int i = 1; i <= 2; ++i) {
    for (int s = 0; s <= 2; ++s) {
      const double scale = std::max(1.0, std::abs(p.jet(i, s)));
      const double h = 1e-3 * scale;
      auto at = [&](double offset) {
        Point shifted = p;
        shifted.jet(i, s) += offset;
        return evaluate(e, shifted);
      };
      // Five-point central stencil.
      const double fd = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      const double exact = evaluate(partial(e, {i, s}), p);
      EXPECT_LE(std::abs(fd - exact), 1e-6 * std::max(1.0, std::abs(exact)))
          << "i=" << i << " s=" << s;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Random, CalculusProperties, ::testing::Range(1, 21));

TEST(Substitute, ReplacesJetsAndParameters) {
  const Expr e = jet(1, 1) * parameter("m");
  const Expr r = substitute(e, {{JetKey{1, 1}, jet(2, 0)}});
  EXPECT_EQ(normalize(r), normalize(jet(2, 0) * parameter("m")));
  EXPECT_EQ(normalize(substitute_parameters(e, {{"m", integer(3)}})), normalize(integer(3) * jet(1, 1)));
}

}  // namespace
}  // namespace lcel
