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

#include "lcel/jet_space.hpp"

#include <algorithm>

#include "lcel/errors.hpp"

namespace lcel {

JetSpace::JetSpace(int dim, int order) : JetSpace(dim, order, 2 * order + 1) {}

JetSpace::JetSpace(int dim, int order, int max_jet) : dim_(dim), order_(order), max_jet_(max_jet) {
  if (dim < 1) throw InvalidArgument("jet space dimension must be >= 1");
  if (order < 1) throw InvalidArgument("Lagrangian order must be >= 1");
  if (max_jet < 2 * order) throw InvalidArgument("max_jet must be >= 2 * order");
}

Point::Point(int dim, int max_jet)
    : dim_(dim), max_jet_(max_jet), jets_(static_cast<std::size_t>(dim * (max_jet + 1)), 0.0) {
  if (dim < 1 || max_jet < 0) throw InvalidArgument("invalid point shape");
}

std::size_t Point::offset(JetKey key) const {
  if (key.index < 1 || key.index > dim_ || key.order < 0 || key.order > max_jet_) {
    throw EvaluationError("jet coordinate (" + std::to_string(key.index) + ", " +
                          std::to_string(key.order) + ") outside the point's jet space");
  }
  return static_cast<std::size_t>((key.index - 1) * (max_jet_ + 1) + key.order);
}

double Point::parameter(const std::string& name) const {
  auto it = parameters_.find(name);
  if (it == parameters_.end()) throw EvaluationError("unbound parameter '" + name + "'");
  return it->second;
}

void Point::set_sigma(const std::vector<int>& multi_index, double value) {
  std::vector<int> key = multi_index;
  std::sort(key.begin(), key.end());
  sigma_[key] = value;
}

double Point::sigma(const std::vector<int>& multi_index) const {
  auto it = sigma_.find(multi_index);
  if (it == sigma_.end()) {
    std::string label = "sigma";
    for (int i : multi_index) label += "_" + std::to_string(i);
    throw EvaluationError("unbound conformal-factor symbol " + label);
  }
  return it->second;
}

}  // namespace lcel
