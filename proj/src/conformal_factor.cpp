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

#include "lcel/conformal_factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "lcel/calculus.hpp"
#include "lcel/errors.hpp"
#include "lcel/normalize.hpp"

namespace lcel {

struct ConformalFactor::State {
  bool abstract = false;
  Expr sigma;
  std::mutex mutex;
  std::map<std::vector<int>, Expr> cache;
};

ConformalFactor ConformalFactor::abstract() {
  auto s = std::make_shared<State>();
  s->abstract = true;
  s->sigma = sigma_symbol({});
  return ConformalFactor(std::move(s));
}

ConformalFactor ConformalFactor::concrete(const Expr& sigma) {
  if (sigma.has_sigma()) {
    throw InvalidArgument("a concrete conformal factor cannot contain abstract sigma symbols");
  }
  if (sigma.max_order() > 0) {
    throw InvalidArgument("the conformal factor may depend on order-0 coordinates only");
  }
  auto s = std::make_shared<State>();
  s->sigma = normalize(sigma);
  return ConformalFactor(std::move(s));
}

ConformalFactor ConformalFactor::zero() { return concrete(integer(0)); }

bool ConformalFactor::is_abstract() const { return state_->abstract; }

const Expr& ConformalFactor::sigma() const { return state_->sigma; }

Expr ConformalFactor::derivative(std::vector<int> indices) const {
  std::sort(indices.begin(), indices.end());
  if (state_->abstract) return sigma_symbol(std::move(indices));
  if (indices.empty()) return state_->sigma;
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->cache.find(indices);
    if (it != state_->cache.end()) return it->second;
  }
  const int last = indices.back();
  std::vector<int> head(indices.begin(), indices.end() - 1);
  Expr d = normalize(partial(derivative(head), JetKey{last, 0}));
  std::lock_guard lock(state_->mutex);
  return state_->cache.emplace(std::move(indices), d).first->second;
}

}  // namespace lcel
