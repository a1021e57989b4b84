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

#include "lcel/print.hpp"

#include <array>
#include <string_view>

namespace lcel {
namespace {

enum Prec { kSumPrec = 1, kProductPrec = 2, kPowerPrec = 4, kAtomPrec = 5 };

bool is_negative_term(const Expr& e) {
  if (e.is_constant()) return sgn(e.value()) < 0;
  return e.kind() == Kind::kProduct && e->children.front().is_constant() &&
         sgn(e->children.front().value()) < 0;
}

Expr negate_term(const Expr& e) {
  if (e.is_constant()) return constant(-e.value());
  std::vector<Expr> factors = e->children;
  factors.front() = constant(-factors.front().value());
  return product(std::move(factors));
}

std::string rational_text(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_greek(std::string_view name) {
  static constexpr std::array<std::string_view, 24> kGreek = {
      "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
      "iota",  "kappa", "lambda", "mu",  "nu",      "xi",   "pi",  "rho",
      "tau",   "upsilon", "phi", "chi", "psi",     "omega", "sigma", "varphi"};
  for (std::string_view g : kGreek) {
    if (g == name) return true;
  }
  return false;
}

class Printer {
 public:
  Printer(const std::vector<std::string>& names, Format format) : names_(names), format_(format) {}

  std::string print(const Expr& e) { return at(e); }

  std::string coordinate(int index) const {
    if (index >= 1 && index <= static_cast<int>(names_.size())) {
      return names_[static_cast<std::size_t>(index - 1)];
    }
    return "q" + std::to_string(index);
  }

  std::string jet_text(JetKey key) const {
    std::string base = coordinate(key.index);
    if (key.order <= 3) return base + std::string(static_cast<std::size_t>(key.order), '\'');
    return base + "(" + std::to_string(key.order) + ")";
  }

 private:
  bool latex() const { return format_ == Format::kLatex; }

  std::string paren(const std::string& s) const {
    return latex() ? "\\left(" + s + "\\right)" : "(" + s + ")";
  }

  std::string wrap(const Expr& e, int outer) {
    const int inner = prec(e);
    std::string s = at(e);
    return inner < outer ? paren(s) : s;
  }

  int prec(const Expr& e) const {
    switch (e.kind()) {
      case Kind::kSum: return kSumPrec;
      case Kind::kProduct: return kProductPrec;
      case Kind::kQuotient: return kProductPrec;
      case Kind::kPower: return kPowerPrec;
      case Kind::kConstant:
        if (sgn(e.value()) < 0) return kSumPrec;
        return e.value().get_den() == 1 ? kAtomPrec : kProductPrec;
      default: return kAtomPrec;
    }
  }

  std::string jet_latex(JetKey key) const {
    const std::string base = coordinate(key.index);
    switch (key.order) {
      case 0: return base;
      case 1: return "\\dot{" + base + "}";
      case 2: return "\\ddot{" + base + "}";
      case 3: return "\\dddot{" + base + "}";
      default: return base + "^{(" + std::to_string(key.order) + ")}";
    }
  }

  std::string at(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::kConstant: {
        if (!latex()) return rational_text(n.value);
        const Rational& r = n.value;
        if (r.get_den() == 1) return r.get_num().get_str();
        Rational a = abs(r);
        std::string f = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
        return sgn(r) < 0 ? "-" + f : f;
      }
      case Kind::kJet:
        return latex() ? jet_latex(n.jet) : jet_text(n.jet);
      case Kind::kParameter:
        return latex() && is_greek(n.name) ? "\\" + n.name : n.name;
      case Kind::kSigma: {
        if (n.multi_index.empty()) return latex() ? "\\sigma" : "sigma";
        std::string s = latex() ? "\\varphi_{" : "phi";
        for (int i : n.multi_index) s += latex() ? std::to_string(i) : "_" + std::to_string(i);
        return latex() ? s + "}" : s;
      }
      case Kind::kSum: {
        std::string s;
        bool first = true;
        for (const Expr& c : n.children) {
          if (first) {
            s += wrap(c, kSumPrec);
          } else if (is_negative_term(c)) {
            s += " - " + wrap(negate_term(c), kProductPrec);
          } else {
            s += " + " + wrap(c, kProductPrec);
          }
          first = false;
        }
        return s;
      }
      case Kind::kProduct: {
        std::vector<Expr> factors = n.children;
        std::string sign;
        if (factors.front().is_constant() && factors.front().value() == -1) {
          sign = "-";
          factors.erase(factors.begin());
        }
        std::string s = sign;
        for (std::size_t k = 0; k < factors.size(); ++k) {
          const Expr& f = factors[k];
          int need = kPowerPrec;
          if (k == 0 && f.is_constant()) need = sign.empty() ? kSumPrec : kPowerPrec;
          if (k > 0) s += latex() ? " " : "*";
          s += wrap(f, need);
        }
        return s;
      }
      case Kind::kPower: {
        const Expr& base = n.children[0];
        std::string b = wrap(base, kAtomPrec);
        if (latex()) {
          if (base.kind() == Kind::kJet && base->jet.order >= 4) b = "{" + b + "}";
          return b + "^{" + std::to_string(n.exponent) + "}";
        }
        return b + "^" + std::to_string(n.exponent);
      }
      case Kind::kQuotient: {
        if (latex()) {
          return "\\frac{" + at(n.children[0]) + "}{" + at(n.children[1]) + "}";
        }
        return wrap(n.children[0], kProductPrec) + "/" + wrap(n.children[1], kPowerPrec);
      }
      case Kind::kExp:
        return latex() ? "e^{" + at(n.children[0]) + "}" : "exp(" + at(n.children[0]) + ")";
      case Kind::kSin:
        return latex() ? "\\sin" + paren(at(n.children[0])) : "sin(" + at(n.children[0]) + ")";
      case Kind::kCos:
        return latex() ? "\\cos" + paren(at(n.children[0])) : "cos(" + at(n.children[0]) + ")";
      case Kind::kAngle: {
        const std::string args = at(n.children[0]) + ", " + at(n.children[1]);
        return latex() ? "\\operatorname{atan2}" + paren(args) : "atan2(" + args + ")";
      }
    }
    return "?";
  }

  const std::vector<std::string>& names_;
  Format format_;
};

}  // namespace

std::string to_string(const Expr& e, const std::vector<std::string>& coordinates, Format format) {
  return Printer(coordinates, format).print(e);
}

std::string jet_label(const std::vector<std::string>& coordinates, JetKey key) {
  return Printer(coordinates, Format::kText).jet_text(key);
}

}  // namespace lcel
