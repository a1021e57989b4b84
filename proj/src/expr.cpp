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

#include "lcel/expr.hpp"

#include <algorithm>
#include <utility>

namespace lcel {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  std::uint64_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return static_cast<std::size_t>(x);
}

std::size_t hash_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t k = 0; k < limbs; ++k) {
    h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), k)));
  }
  return h;
}

std::uint64_t jet_bit(JetKey key) {
  return std::uint64_t{1} << ((static_cast<unsigned>(key.index) * 31U +
                               static_cast<unsigned>(key.order) * 7U) % 64U);
}

int kind_rank(Kind k) {
  switch (k) {
    case Kind::kConstant: return 0;
    case Kind::kParameter: return 1;
    case Kind::kSigma: return 2;
    case Kind::kJet: return 3;
    case Kind::kAngle: return 4;
    case Kind::kSin: return 5;
    case Kind::kCos: return 6;
    case Kind::kExp: return 7;
    case Kind::kPower: return 8;
    case Kind::kQuotient: return 9;
    case Kind::kSum: return 10;
    case Kind::kProduct: return 11;
  }
  return 12;
}

const Expr& zero_expr() {
  static const Expr z = constant(Rational(0));
  return z;
}

}  // namespace

Expr Node::make(Node node) {
  std::size_t h = mix(0, static_cast<std::size_t>(node.kind) + 1);
  switch (node.kind) {
    case Kind::kConstant:
      node.value.canonicalize();
      h = mix(h, hash_mpz(node.value.get_num()));
      h = mix(h, hash_mpz(node.value.get_den()));
      node.exact = true;
      break;
    case Kind::kJet:
      h = mix(h, static_cast<std::size_t>(node.jet.index));
      h = mix(h, static_cast<std::size_t>(node.jet.order));
      node.max_order = node.jet.order;
      node.dependency_mask = jet_bit(node.jet);
      break;
    case Kind::kParameter:
      h = mix(h, hash_string(node.name));
      break;
    case Kind::kSigma:
      for (int i : node.multi_index) h = mix(h, static_cast<std::size_t>(i));
      h = mix(h, node.multi_index.size());
      node.max_order = 0;
      node.has_sigma = true;
      break;
    default:
      break;
  }
  if (node.kind == Kind::kPower) h = mix(h, static_cast<std::size_t>(node.exponent + 1000));
  if (!node.children.empty()) {
    bool exact = node.kind == Kind::kSum || node.kind == Kind::kProduct ||
                 node.kind == Kind::kPower || node.kind == Kind::kQuotient;
    for (const Expr& c : node.children) {
      const Node& cn = c.node();
      h = mix(h, cn.hash);
      node.size += cn.size;
      node.max_order = std::max(node.max_order, cn.max_order);
      node.has_sigma = node.has_sigma || cn.has_sigma;
      node.has_exp = node.has_exp || cn.has_exp;
      node.dependency_mask |= cn.dependency_mask;
      exact = exact && cn.exact;
    }
    node.exact = exact;
  }
  if (node.kind == Kind::kExp) node.has_exp = true;
  node.hash = h;
  return Expr(std::make_shared<const Node>(std::move(node)));
}

Expr::Expr() : node_(zero_expr().node_) {}

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_constant() const { return node_->kind == Kind::kConstant; }
bool Expr::is_zero() const { return is_constant() && sgn(node_->value) == 0; }
bool Expr::is_one() const { return is_constant() && node_->value == 1; }
const Rational& Expr::value() const { return node_->value; }
int Expr::max_order() const { return node_->max_order; }
bool Expr::has_sigma() const { return node_->has_sigma; }
bool Expr::has_exp() const { return node_->has_exp; }
std::size_t Expr::hash() const { return node_->hash; }
std::size_t Expr::size() const { return node_->size; }

bool Expr::may_depend_on(JetKey key) const {
  if (key.order > node_->max_order) return false;
  if (key.order == 0 && node_->has_sigma) return true;
  return (node_->dependency_mask & jet_bit(key)) != 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return 0;
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.kind != y.kind) return kind_rank(x.kind) < kind_rank(y.kind) ? -1 : 1;
  switch (x.kind) {
    case Kind::kConstant:
      return cmp(x.value, y.value) < 0 ? -1 : (cmp(x.value, y.value) > 0 ? 1 : 0);
    case Kind::kJet:
      if (x.jet.index != y.jet.index) return x.jet.index < y.jet.index ? -1 : 1;
      if (x.jet.order != y.jet.order) return x.jet.order < y.jet.order ? -1 : 1;
      return 0;
    case Kind::kParameter:
      return x.name < y.name ? -1 : (x.name == y.name ? 0 : 1);
    case Kind::kSigma:
      if (x.multi_index.size() != y.multi_index.size()) {
        return x.multi_index.size() < y.multi_index.size() ? -1 : 1;
      }
      if (x.multi_index != y.multi_index) return x.multi_index < y.multi_index ? -1 : 1;
      return 0;
    default:
      break;
  }
  if (x.kind == Kind::kPower && x.exponent != y.exponent) {
    const int c = compare(x.children[0], y.children[0]);
    if (c != 0) return c;
    return x.exponent < y.exponent ? -1 : 1;
  }
  const std::size_t n = std::min(x.children.size(), y.children.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int c = compare(x.children[k], y.children[k]);
    if (c != 0) return c;
  }
  if (x.children.size() != y.children.size()) {
    return x.children.size() < y.children.size() ? -1 : 1;
  }
  return 0;
}

Expr constant(const Rational& value) {
  Node n;
  n.kind = Kind::kConstant;
  n.value = value;
  return Node::make(std::move(n));
}

Expr integer(long value) { return constant(Rational(value)); }

Expr jet(int index, int order) {
  Node n;
  n.kind = Kind::kJet;
  n.jet = JetKey{index, order};
  return Node::make(std::move(n));
}

Expr parameter(const std::string& name) {
  Node n;
  n.kind = Kind::kParameter;
  n.name = name;
  return Node::make(std::move(n));
}

Expr sigma_symbol(std::vector<int> multi_index) {
  std::sort(multi_index.begin(), multi_index.end());
  Node n;
  n.kind = Kind::kSigma;
  n.multi_index = std::move(multi_index);
  return Node::make(std::move(n));
}

Expr sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  Rational c = 0;
  for (Expr& t : terms) {
    if (t.kind() == Kind::kSum) {
      for (const Expr& u : t->children) {
        if (u.is_constant()) {
          c += u.value();
        } else {
          flat.push_back(u);
        }
      }
    } else if (t.is_constant()) {
      c += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (flat.empty()) return constant(c);
  if (sgn(c) != 0) flat.push_back(constant(c));
  if (flat.size() == 1) return flat.front();
  Node n;
  n.kind = Kind::kSum;
  n.children = std::move(flat);
  return Node::make(std::move(n));
}

Expr product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  Rational c = 1;
  auto absorb = [&](const Expr& f) {
    if (f.is_constant()) {
      c *= f.value();
    } else {
      flat.push_back(f);
    }
  };
  for (const Expr& f : factors) {
    if (f.kind() == Kind::kProduct) {
      for (const Expr& u : f->children) absorb(u);
    } else {
      absorb(f);
    }
  }
  if (sgn(c) == 0) return constant(Rational(0));
  if (flat.empty()) return constant(c);
  if (c == 1 && flat.size() == 1) return flat.front();
  if (c != 1) flat.insert(flat.begin(), constant(c));
  Node n;
  n.kind = Kind::kProduct;
  n.children = std::move(flat);
  return Node::make(std::move(n));
}

Expr power(const Expr& base, int exponent) {
  if (exponent == 0) return integer(1);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    const Rational& b = base.value();
    if (exponent > 0 || sgn(b) != 0) {
      mpz_class num;
      mpz_class den;
      const unsigned long k = static_cast<unsigned long>(exponent > 0 ? exponent : -exponent);
      mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
      mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
      Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
      r.canonicalize();
      return constant(r);
    }
  }
  if (base.kind() == Kind::kPower) {
    return power(base->children[0], base->exponent * exponent);
  }
  Node n;
  n.kind = Kind::kPower;
  n.exponent = exponent;
  n.children = {base};
  return Node::make(std::move(n));
}

Expr quotient(const Expr& numerator, const Expr& denominator) {
  if (denominator.is_constant() && sgn(denominator.value()) != 0) {
    return product({numerator, constant(Rational(1) / denominator.value())});
  }
  if (numerator.is_zero() && !denominator.is_constant()) return numerator;
  Node n;
  n.kind = Kind::kQuotient;
  n.children = {numerator, denominator};
  return Node::make(std::move(n));
}

namespace {

Expr unary(Kind kind, const Expr& arg) {
  Node n;
  n.kind = kind;
  n.children = {arg};
  return Node::make(std::move(n));
}

}  // namespace

Expr exp(const Expr& arg) {
  if (arg.is_zero()) return integer(1);
  return unary(Kind::kExp, arg);
}

Expr sin(const Expr& arg) {
  if (arg.is_zero()) return integer(0);
  return unary(Kind::kSin, arg);
}

Expr cos(const Expr& arg) {
  if (arg.is_zero()) return integer(1);
  return unary(Kind::kCos, arg);
}

Expr angle(const Expr& y, const Expr& x) {
  Node n;
  n.kind = Kind::kAngle;
  n.children = {y, x};
  return Node::make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }
Expr operator-(const Expr& a) { return product({integer(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }

}  // namespace lcel
