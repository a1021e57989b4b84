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

#pragma once

#include <memory>
#include <vector>

#include "lcel/expr.hpp"

namespace lcel {

// The conformal factor sigma(q), a function of the order-0 coordinates.
//
// A concrete factor wraps a user expression and differentiates it
// symbolically. An abstract factor leaves sigma unspecified; its partial
// derivatives phi_{i...} are opaque, fully symmetric symbols. Both answer
// `derivative` through the same interface, so downstream generators share
// one code path. Derivatives are cached behind a mutex; copies share the
// cache.
class ConformalFactor {
 public:
  static ConformalFactor abstract();
  // Throws InvalidArgument when `sigma` involves jets of order > 0 or
  // abstract sigma symbols.
  static ConformalFactor concrete(const Expr& sigma);
  static ConformalFactor zero();

  bool is_abstract() const;
  // sigma itself (the symbol `sigma` in abstract mode).
  const Expr& sigma() const;
  // Mixed partial of sigma with respect to q^{i_1} ... q^{i_k}; the order
  // of `indices` is immaterial. An empty list returns sigma.
  Expr derivative(std::vector<int> indices) const;
  // phi_i.
  Expr phi(int i) const { return derivative({i}); }

 private:
  struct State;
  explicit ConformalFactor(std::shared_ptr<State> state) : state_(std::move(state)) {}

  std::shared_ptr<State> state_;
};

}  // namespace lcel
