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

#include "lcel/calculus.hpp"

#include <string>
#include <utility>

#include "lcel/errors.hpp"
#include "lcel/normalize.hpp"

namespace lcel {
namespace {

// Shared chain/Leibniz rules. `leaf` differentiates jets and sigma symbols;
// `independent` short-circuits subtrees known to have zero derivative.
template <typename Leaf, typename Independent>
Expr derive(const Expr& e, const Leaf& leaf, const Independent& independent) {
  if (independent(e)) return integer(0);
  const Node& n = e.node();
  auto d = [&](const Expr& c) { return derive(c, leaf, independent); };
  switch (n.kind) {
    case Kind::kConstant:
    case Kind::kParameter:
      return integer(0);
    case Kind::kJet:
    case Kind::kSigma:
      return leaf(e);
    case Kind::kSum: {
      std::vector<Expr> terms;
      terms.reserve(n.children.size());
      for (const Expr& c : n.children) terms.push_back(d(c));
      return sum(std::move(terms));
    }
    case Kind::kProduct: {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        Expr dk = d(n.children[k]);
        if (dk.is_zero()) continue;
        std::vector<Expr> factors = n.children;
        factors[k] = std::move(dk);
        terms.push_back(product(std::move(factors)));
      }
      return sum(std::move(terms));
    }
    case Kind::kPower: {
      const Expr& base = n.children[0];
      Expr db = d(base);
      if (db.is_zero()) return integer(0);
      return product({integer(n.exponent), power(base, n.exponent - 1), db});
    }
    case Kind::kQuotient: {
      const Expr& a = n.children[0];
      const Expr& b = n.children[1];
      Expr da = d(a);
      Expr db = d(b);
      if (db.is_zero()) return quotient(da, b);
      return quotient(da * b - a * db, power(b, 2));
    }
    case Kind::kExp: {
      Expr da = d(n.children[0]);
      if (da.is_zero()) return integer(0);
      return e * da;
    }
    case Kind::kSin: {
      Expr da = d(n.children[0]);
      if (da.is_zero()) return integer(0);
      return cos(n.children[0]) * da;
    }
    case Kind::kCos: {
      Expr da = d(n.children[0]);
      if (da.is_zero()) return integer(0);
      return -(sin(n.children[0]) * da);
    }
    case Kind::kAngle: {
      const Expr& y = n.children[0];
      const Expr& x = n.children[1];
      Expr dy = d(y);
      Expr dx = d(x);
      if (dy.is_zero() && dx.is_zero()) return integer(0);
      return quotient(x * dy - y * dx, power(x, 2) + power(y, 2));
    }
  }
  return integer(0);
}

}  // namespace

Expr partial(const Expr& e, JetKey key) {
  auto leaf = [&](const Expr& x) -> Expr {
    const Node& n = x.node();
    if (n.kind == Kind::kJet) return integer(n.jet == key ? 1 : 0);
    if (key.order != 0) return integer(0);
    std::vector<int> idx = n.multi_index;
    idx.push_back(key.index);
    return sigma_symbol(std::move(idx));
  };
  auto independent = [&](const Expr& x) { return !x.may_depend_on(key); };
  return derive(e, leaf, independent);
}

Expr partial(const Expr& e, const JetSpace& space, JetKey key) {
  if (!space.contains(key)) {
    throw InvalidArgument("partial derivative with respect to invalid jet (" +
                          std::to_string(key.index) + ", " + std::to_string(key.order) + ")");
  }
  return partial(e, key);
}

Expr total_derivative(const Expr& e, const JetSpace& space, int times) {
  if (times < 0) throw InvalidArgument("negative derivative count");
  auto leaf = [&](const Expr& x) -> Expr {
    const Node& n = x.node();
    if (n.kind == Kind::kJet) {
      if (n.jet.order + 1 > space.max_jet()) {
        throw JetOrderOverflow("total derivative of jet order " + std::to_string(n.jet.order) +
                               " exceeds max_jet " + std::to_string(space.max_jet()));
      }
      return jet(n.jet.index, n.jet.order + 1);
    }
    std::vector<Expr> terms;
    for (int j = 1; j <= space.dim(); ++j) {
      std::vector<int> idx = n.multi_index;
      idx.push_back(j);
      terms.push_back(sigma_symbol(std::move(idx)) * jet(j, 1));
    }
    return sum(std::move(terms));
  };
  auto independent = [](const Expr& x) { return x.max_order() < 0; };
  Expr out = e;
  for (int k = 0; k < times; ++k) out = normalize(derive(out, leaf, independent));
  return out;
}

namespace {

template <typename Leaf>
Expr rebuild(const Expr& e, const Leaf& leaf) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::kConstant:
      return e;
    case Kind::kJet:
    case Kind::kParameter:
    case Kind::kSigma:
      return leaf(e);
    default:
      break;
  }
  std::vector<Expr> kids;
  kids.reserve(n.children.size());
  for (const Expr& c : n.children) kids.push_back(rebuild(c, leaf));
  switch (n.kind) {
    case Kind::kSum: return sum(std::move(kids));
    case Kind::kProduct: return product(std::move(kids));
    case Kind::kPower: return power(kids[0], n.exponent);
    case Kind::kQuotient: return quotient(kids[0], kids[1]);
    case Kind::kExp: return exp(kids[0]);
    case Kind::kSin: return sin(kids[0]);
    case Kind::kCos: return cos(kids[0]);
    case Kind::kAngle: return angle(kids[0], kids[1]);
    default: return e;
  }
}

}  // namespace

Expr substitute(const Expr& e, const std::map<JetKey, Expr>& replacements) {
  return rebuild(e, [&](const Expr& x) -> Expr {
    if (x.kind() != Kind::kJet) return x;
    auto it = replacements.find(x->jet);
    return it == replacements.end() ? x : it->second;
  });
}

Expr substitute_parameters(const Expr& e, const std::map<std::string, Expr>& replacements) {
  return rebuild(e, [&](const Expr& x) -> Expr {
    if (x.kind() != Kind::kParameter) return x;
    auto it = replacements.find(x->name);
    return it == replacements.end() ? x : it->second;
  });
}

}  // namespace lcel
