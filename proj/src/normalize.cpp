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

#include "lcel/normalize.hpp"

#include <map>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lcel {
namespace {

struct Monomial {
  std::vector<std::pair<Expr, int>> factors;
  Expr exp_arg;  // 0 when absent
};

int compare_monomials(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int c = compare(a.factors[k].first, b.factors[k].first);
    if (c != 0) return c;
    if (a.factors[k].second != b.factors[k].second) {
      return a.factors[k].second < b.factors[k].second ? -1 : 1;
    }
  }
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
  return compare(a.exp_arg, b.exp_arg);
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_monomials(a, b) < 0;
  }
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

Expr from_poly(const Poly& p);
Poly to_poly_fresh(const Expr& e);

Expr add_canonical(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return normalize(a + b);
}

Expr scale_canonical(const Expr& a, int k) {
  if (a.is_zero() || k == 1) return a;
  return normalize(product({integer(k), a}));
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size()) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size()) {
      out.factors.push_back(b.factors[j++]);
    } else {
      const int c = compare(a.factors[i].first, b.factors[j].first);
      if (c < 0) {
        out.factors.push_back(a.factors[i++]);
      } else if (c > 0) {
        out.factors.push_back(b.factors[j++]);
      } else {
        const int e = a.factors[i].second + b.factors[j].second;
        if (e != 0) out.factors.emplace_back(a.factors[i].first, e);
        ++i;
        ++j;
      }
    }
  }
  out.exp_arg = add_canonical(a.exp_arg, b.exp_arg);
  return out;
}

void accumulate(Poly& into, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) into.erase(it);
  }
}

void add_into(Poly& into, const Poly& p) {
  for (const auto& [m, c] : p) accumulate(into, m, c);
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) accumulate(out, multiply(ma, mb), ca * cb);
  }
  return out;
}

Poly constant_poly(const Rational& c) {
  Poly p;
  accumulate(p, Monomial{}, c);
  return p;
}

Poly atom_poly(const Expr& atom, int exponent) {
  Poly p;
  Monomial m;
  m.factors.emplace_back(atom, exponent);
  p.emplace(std::move(m), Rational(1));
  return p;
}

Poly pow_positive(Poly base, int k) {
  Poly result = constant_poly(1);
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

Rational rational_pow(const Rational& c, int k) {
  mpz_class num;
  mpz_class den;
  const unsigned long a = static_cast<unsigned long>(k > 0 ? k : -k);
  mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), a);
  mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), a);
  Rational r = k > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Poly pow_poly(const Poly& base, int k) {
  if (k == 0) return constant_poly(1);
  if (k > 0) return pow_positive(base, k);
  if (base.empty()) return atom_poly(integer(0), k);
  if (base.size() == 1) {
    const auto& [m, c] = *base.begin();
    Monomial inv;
    Poly expanded = constant_poly(rational_pow(c, k));
    for (const auto& [atom, e] : m.factors) {
      const int ek = e * k;
      if (atom.kind() == Kind::kSum && ek > 0) {
        expanded = multiply(expanded, pow_positive(to_poly_fresh(atom), ek));
      } else {
        inv.factors.emplace_back(atom, ek);
      }
    }
    inv.exp_arg = scale_canonical(m.exp_arg, k);
    Poly single;
    single.emplace(std::move(inv), Rational(1));
    return multiply(expanded, single);
  }
  // Multi-term base: factor out the leading coefficient, keep a monic atom.
  const Rational lead = base.begin()->second;
  Poly monic;
  for (const auto& [m, c] : base) monic.emplace(m, c / lead);
  Poly out = atom_poly(from_poly(monic), k);
  for (auto& [m, c] : out) c = rational_pow(lead, k);
  return out;
}

class Normalizer {
 public:
  const Poly& to_poly(const Expr& e) {
    auto it = memo_.find(&e.node());
    if (it != memo_.end()) return *it->second;
    auto p = std::make_shared<Poly>(compute(e));
    keep_.push_back(e);
    return *memo_.emplace(&e.node(), std::move(p)).first->second;
  }

 private:
  Poly compute(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::kConstant:
        return constant_poly(n.value);
      case Kind::kJet:
      case Kind::kParameter:
      case Kind::kSigma:
        return atom_poly(e, 1);
      case Kind::kSum: {
        Poly out;
        for (const Expr& c : n.children) add_into(out, to_poly(c));
        return out;
      }
      case Kind::kProduct: {
        Poly out = constant_poly(1);
        for (const Expr& c : n.children) {
          out = multiply(out, to_poly(c));
          if (out.empty()) break;
        }
        return out;
      }
      case Kind::kPower:
        return pow_poly(to_poly(n.children[0]), n.exponent);
      case Kind::kQuotient:
        return multiply(to_poly(n.children[0]), pow_poly(to_poly(n.children[1]), -1));
      case Kind::kExp: {
        const Poly& arg = to_poly(n.children[0]);
        if (arg.empty()) return constant_poly(1);
        Monomial m;
        m.exp_arg = from_poly(arg);
        Poly out;
        out.emplace(std::move(m), Rational(1));
        return out;
      }
      case Kind::kSin: {
        const Poly& arg = to_poly(n.children[0]);
        if (arg.empty()) return Poly{};
        return atom_poly(sin(from_poly(arg)), 1);
      }
      case Kind::kCos: {
        const Poly& arg = to_poly(n.children[0]);
        if (arg.empty()) return constant_poly(1);
        return atom_poly(cos(from_poly(arg)), 1);
      }
      case Kind::kAngle:
        return atom_poly(angle(from_poly(to_poly(n.children[0])), from_poly(to_poly(n.children[1]))),
                         1);
    }
    return Poly{};
  }

  std::unordered_map<const Node*, std::shared_ptr<Poly>> memo_;
  std::vector<Expr> keep_;
};

Poly to_poly_fresh(const Expr& e) {
  Normalizer n;
  return n.to_poly(e);
}

Expr from_poly(const Poly& p) {
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) {
    std::vector<Expr> factors;
    factors.reserve(m.factors.size() + 2);
    factors.push_back(constant(c));
    for (const auto& [atom, e] : m.factors) factors.push_back(e == 1 ? atom : power(atom, e));
    if (!m.exp_arg.is_zero()) factors.push_back(exp(m.exp_arg));
    terms.push_back(product(std::move(factors)));
  }
  return sum(std::move(terms));
}

}  // namespace

Expr normalize(const Expr& e) {
  Normalizer n;
  return from_poly(n.to_poly(e));
}

}  // namespace lcel
