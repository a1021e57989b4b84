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

// Immutable symbolic expressions over jet coordinates q^i_(s).
//
// Expressions are reference-counted trees of `Node`s. Nodes are never
// mutated after construction, so an `Expr` can be shared freely between
// threads. Builders perform only local simplifications (constant folding,
// flattening, zero/one elimination); `normalize` computes the canonical form.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lcel {

using Rational = mpq_class;

// 1-based coordinate index and derivative order.
struct JetKey {
  int index = 1;
  int order = 0;

  auto operator<=>(const JetKey&) const = default;
};

enum class Kind : std::uint8_t {
  kConstant,
  kJet,
  kParameter,
  // A derivative of an unspecified conformal factor: sigma itself for an
  // empty multi-index, phi_{i...} otherwise.
  kSigma,
  kSum,
  kProduct,
  kPower,
  kExp,
  kSin,
  kCos,
  // angle(y, x) = atan2(y, x).
  kAngle,
  kQuotient,
};

class Node;

class Expr {
 public:
  // The constant 0.
  Expr();

  const Node& node() const { return *node_; }
  const Node* operator->() const { return node_.get(); }
  Kind kind() const;

  bool is_constant() const;
  bool is_zero() const;
  bool is_one() const;
  // Constant value; only meaningful when is_constant().
  const Rational& value() const;

  // Highest jet order occurring, -1 for expressions free of jets. Abstract
  // sigma symbols count as order 0.
  int max_order() const;
  // True when any abstract sigma symbol occurs.
  bool has_sigma() const;
  // True when any exp node occurs.
  bool has_exp() const;
  // Conservative: false guarantees independence of q^index_(order).
  bool may_depend_on(JetKey key) const;

  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  friend class Node;
  std::shared_ptr<const Node> node_;
};

class Node {
 public:
  Kind kind;
  Rational value;
  JetKey jet;
  int exponent = 0;
  std::string name;
  std::vector<int> multi_index;
  std::vector<Expr> children;

  std::size_t hash = 0;
  std::size_t size = 1;
  int max_order = -1;
  bool has_sigma = false;
  bool has_exp = false;
  // Built only from constants with + * ^ /, so it can be folded exactly.
  bool exact = false;
  std::uint64_t dependency_mask = 0;

  static Expr make(Node node);
};

// Total structural order. Returns <0, 0, >0.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

Expr constant(const Rational& value);
Expr integer(long value);
Expr jet(int index, int order);
Expr parameter(const std::string& name);
// Abstract conformal-factor derivative; the multi-index is sorted on entry.
Expr sigma_symbol(std::vector<int> multi_index);

Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr power(const Expr& base, int exponent);
Expr quotient(const Expr& numerator, const Expr& denominator);
Expr exp(const Expr& arg);
Expr sin(const Expr& arg);
Expr cos(const Expr& arg);
Expr angle(const Expr& y, const Expr& x);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

}  // namespace lcel
