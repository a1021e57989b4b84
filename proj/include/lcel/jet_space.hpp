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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lcel/expr.hpp"

namespace lcel {

// Jet coordinates q^i_(s) with 1 <= i <= dim and 0 <= s <= max_jet, for a
// Lagrangian of the given order.
class JetSpace {
 public:
  // max_jet defaults to 2 * order + 1.
  JetSpace(int dim, int order);
  JetSpace(int dim, int order, int max_jet);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int max_jet() const { return max_jet_; }

  bool contains(JetKey key) const {
    return key.index >= 1 && key.index <= dim_ && key.order >= 0 && key.order <= max_jet_;
  }

  bool operator==(const JetSpace&) const = default;

 private:
  int dim_;
  int order_;
  int max_jet_;
};

// A complete assignment of jet values, plus bindings for named parameters
// and for abstract conformal-factor symbols.
class Point {
 public:
  Point(int dim, int max_jet);

  int dim() const { return dim_; }
  int max_jet() const { return max_jet_; }

  double jet(JetKey key) const { return jets_[offset(key)]; }
  double& jet(JetKey key) { return jets_[offset(key)]; }
  double jet(int index, int order) const { return jet(JetKey{index, order}); }
  double& jet(int index, int order) { return jet(JetKey{index, order}); }

  void set_parameter(const std::string& name, double value) { parameters_[name] = value; }
  // Throws EvaluationError when unbound.
  double parameter(const std::string& name) const;
  const std::map<std::string, double, std::less<>>& parameters() const { return parameters_; }

  void set_sigma(const std::vector<int>& multi_index, double value);
  double sigma(const std::vector<int>& multi_index) const;
  const std::map<std::vector<int>, double>& sigma_values() const { return sigma_; }

 private:
  std::size_t offset(JetKey key) const;

  int dim_;
  int max_jet_;
  std::vector<double> jets_;
  std::map<std::string, double, std::less<>> parameters_;
  std::map<std::vector<int>, double> sigma_;
};

}  // namespace lcel
