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

#include "lcel/evaluate.hpp"

#include <cmath>

#include "lcel/errors.hpp"

namespace lcel {
namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string("non-finite value in ") + what);
  return v;
}

double eval(const Expr& e, const Point& p) {
  const Node& n = e.node();
  if (n.exact && n.kind != Kind::kConstant) return evaluate_exact(e).get_d();
  switch (n.kind) {
    case Kind::kConstant:
      return n.value.get_d();
    case Kind::kJet:
      return p.jet(n.jet);
    case Kind::kParameter:
      return p.parameter(n.name);
    case Kind::kSigma:
      return p.sigma(n.multi_index);
    case Kind::kSum: {
      double acc = 0.0;
      for (const Expr& c : n.children) acc += eval(c, p);
      return acc;
    }
    case Kind::kProduct: {
      double acc = 1.0;
      for (const Expr& c : n.children) acc *= eval(c, p);
      return acc;
    }
    case Kind::kPower: {
      const double b = eval(n.children[0], p);
      if (b == 0.0 && n.exponent < 0) throw EvaluationError("division by zero in power");
      int k = n.exponent < 0 ? -n.exponent : n.exponent;
      double r = 1.0;
      double x = b;
      while (k > 0) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
      }
      return checked(n.exponent < 0 ? 1.0 / r : r, "power");
    }
    case Kind::kQuotient: {
      const double den = eval(n.children[1], p);
      if (den == 0.0) throw EvaluationError("division by zero");
      return checked(eval(n.children[0], p) / den, "quotient");
    }
    case Kind::kExp:
      return checked(std::exp(eval(n.children[0], p)), "exp");
    case Kind::kSin:
      return std::sin(eval(n.children[0], p));
    case Kind::kCos:
      return std::cos(eval(n.children[0], p));
    case Kind::kAngle: {
      const double y = eval(n.children[0], p);
      const double x = eval(n.children[1], p);
      if (x == 0.0 && y == 0.0) throw EvaluationError("angle(y, x) evaluated at the origin");
      return std::atan2(y, x);
    }
  }
  return 0.0;
}

}  // namespace

Rational evaluate_exact(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::kConstant:
      return n.value;
    case Kind::kSum: {
      Rational acc = 0;
      for (const Expr& c : n.children) acc += evaluate_exact(c);
      return acc;
    }
    case Kind::kProduct: {
      Rational acc = 1;
      for (const Expr& c : n.children) acc *= evaluate_exact(c);
      return acc;
    }
    case Kind::kPower: {
      const Rational b = evaluate_exact(n.children[0]);
      if (sgn(b) == 0 && n.exponent < 0) throw EvaluationError("division by zero in power");
      Rational r = 1;
      const int k = n.exponent < 0 ? -n.exponent : n.exponent;
      for (int i = 0; i < k; ++i) r *= b;
      if (n.exponent < 0) r = 1 / r;
      return r;
    }
    case Kind::kQuotient: {
      const Rational den = evaluate_exact(n.children[1]);
      if (sgn(den) == 0) throw EvaluationError("division by zero");
      return evaluate_exact(n.children[0]) / den;
    }
    default:
      throw EvaluationError("expression is not an exact constant");
  }
}

double evaluate(const Expr& e, const Point& point) { return checked(eval(e, point), "result"); }

}  // namespace lcel
