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

#include "lcel/euler_lagrange.hpp"

#include <algorithm>

#include "lcel/calculus.hpp"
#include "lcel/errors.hpp"
#include "lcel/normalize.hpp"

namespace lcel {
namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int max_jet_order(const std::vector<Expr>& residuals) {
  int k = 0;
  for (const Expr& e : residuals) k = std::max(k, e.max_order());
  return k;
}

EquationSet make_set(std::vector<Expr> residuals, EquationForm form, const LagrangianModel& model) {
  EquationSet eqs;
  eqs.max_jet_order = max_jet_order(residuals);
  eqs.residuals = std::move(residuals);
  eqs.form = form;
  eqs.order = model.space.order();
  return eqs;
}

// dL/dq^i_(s) for s = 0..n.
std::vector<Expr> momenta(const LagrangianModel& model, int i) {
  std::vector<Expr> out;
  for (int s = 0; s <= model.space.order(); ++s) out.push_back(partial(model.lagrangian, {i, s}));
  return out;
}

std::string partial_symbol(int s, Format format) {
  if (format == Format::kLatex) {
    static const char* const kDots[] = {"q", "\\dot{q}", "\\ddot{q}", "\\dddot{q}"};
    const std::string q = s <= 3 ? std::string(kDots[s]) + "^i" : "q^i_{(" + std::to_string(s) + ")}";
    return "\\frac{\\partial L}{\\partial " + q + "}";
  }
  const std::string q = s <= 3 ? "q" + std::string(static_cast<std::size_t>(s), '\'')
                               : "q(" + std::to_string(s) + ")";
  return "dL/d" + q + "^i";
}

std::string ddt(int a, Format format) {
  if (format == Format::kLatex) {
    return a == 1 ? "\\frac{d}{dt}" : "\\frac{d^{" + std::to_string(a) + "}}{dt^{" + std::to_string(a) + "}}";
  }
  return a == 1 ? "d/dt" : "d^" + std::to_string(a) + "/dt^" + std::to_string(a);
}

std::string calB_symbol(int s, Format format) {
  return format == Format::kLatex ? "\\mathcal{B}_{" + std::to_string(s) + "}" : "B_" + std::to_string(s);
}

}  // namespace

void LagrangianModel::validate() const {
  if (lagrangian.max_order() > space.order()) {
    throw InvalidArgument("Lagrangian involves jets of order " + std::to_string(lagrangian.max_order()) +
                          " above the model order " + std::to_string(space.order()));
  }
  if (lagrangian.has_sigma()) {
    throw InvalidArgument("Lagrangian must not contain abstract sigma symbols");
  }
  if (sigma.sigma().max_order() > 0) throw InvalidArgument("sigma must depend on coordinates only");
  if (!coordinates.empty() && static_cast<int>(coordinates.size()) != space.dim()) {
    throw InvalidArgument("expected " + std::to_string(space.dim()) + " coordinate names, got " +
                          std::to_string(coordinates.size()));
  }
}

std::string form_name(EquationForm form) {
  switch (form) {
    case EquationForm::kClassical: return "classical";
    case EquationForm::kLcExpanded: return "lc-expanded";
    case EquationForm::kLcCompact: return "lc-compact";
  }
  return "";
}

EquationSet classical_el(const LagrangianModel& model) {
  model.validate();
  std::vector<Expr> residuals;
  for (int i = 1; i <= model.space.dim(); ++i) {
    const std::vector<Expr> p = momenta(model, i);
    std::vector<Expr> terms;
    for (int s = 0; s < static_cast<int>(p.size()); ++s) {
      const Expr d = total_derivative(p[s], model.space, s);
      terms.push_back(s % 2 == 0 ? d : -d);
    }
    residuals.push_back(normalize(sum(terms)));
  }
  return make_set(std::move(residuals), EquationForm::kClassical, model);
}

std::vector<Expr> conformal_rhs(const LagrangianModel& model, SlotPairing pairing) {
  model.validate();
  const int n = model.space.order();
  std::vector<Expr> calBs;
  for (int s = 0; s <= n; ++s) calBs.push_back(calB(s, model.sigma, model.space, pairing));
  std::vector<Expr> out;
  for (int i = 1; i <= model.space.dim(); ++i) {
    const std::vector<Expr> p = momenta(model, i);
    std::vector<Expr> terms{model.sigma.phi(i) * model.lagrangian};
    for (int s = 1; s <= n; ++s) {
      if (p[s].is_zero()) continue;
      Expr derivative = p[s];
      for (int a = 0; a < s; ++a) {
        if (a > 0) derivative = total_derivative(derivative, model.space);
        const long sign = s % 2 == 1 ? 1 : -1;
        terms.push_back(integer(sign * binomial(s, a)) * calBs[s - a] * derivative);
      }
    }
    out.push_back(normalize(sum(terms)));
  }
  return out;
}

EquationSet lc_el_expanded(const LagrangianModel& model) {
  const EquationSet classical = classical_el(model);
  const std::vector<Expr> rhs = conformal_rhs(model);
  std::vector<Expr> residuals;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    residuals.push_back(normalize(classical.residuals[i] - rhs[i]));
  }
  return make_set(std::move(residuals), EquationForm::kLcExpanded, model);
}

EquationSet lc_el_compact(const LagrangianModel& model) {
  model.validate();
  const Expr weight = exp(-model.sigma.sigma());
  std::vector<Expr> residuals;
  for (int i = 1; i <= model.space.dim(); ++i) {
    const std::vector<Expr> p = momenta(model, i);
    std::vector<Expr> terms;
    for (int s = 0; s < static_cast<int>(p.size()); ++s) {
      const Expr d = total_derivative(weight * p[s], model.space, s);
      terms.push_back(s % 2 == 0 ? d : -d);
    }
    terms.push_back(-(weight * model.sigma.phi(i) * model.lagrangian));
    residuals.push_back(normalize(sum(terms)));
  }
  return make_set(std::move(residuals), EquationForm::kLcCompact, model);
}

std::string conformal_rhs_structure(int n, Format format) {
  if (n < 1) throw InvalidArgument("conformal_rhs_structure: order must be positive");
  std::string out = format == Format::kLatex ? "\\varphi_i L" : "phi_i L";
  for (int s = 1; s <= n; ++s) {
    std::vector<std::string> parts;
    for (int a = 0; a < s; ++a) {
      std::string part;
      const long c = binomial(s, a);
      if (c != 1) part += std::to_string(c) + (format == Format::kLatex ? "" : " ");
      part += calB_symbol(s - a, format);
      if (a > 0) part += " " + ddt(a, format);
      parts.push_back(part);
    }
    std::string op;
    for (std::size_t k = 0; k < parts.size(); ++k) op += (k > 0 ? " + " : "") + parts[k];
    if (parts.size() > 1) {
      op = format == Format::kLatex ? "\\left(" + op + "\\right)" : "(" + op + ")";
    }
    out += s % 2 == 1 ? " + " : " - ";
    out += op + " " + partial_symbol(s, format);
  }
  return out;
}

std::string format_equations(const EquationSet& eqs, const std::vector<std::string>& coordinates,
                             Format format) {
  std::string out;
  for (const Expr& r : eqs.residuals) out += to_string(r, coordinates, format) + " = 0\n";
  return out;
}

}  // namespace lcel
