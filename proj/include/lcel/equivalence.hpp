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

// Probabilistic identity testing by random evaluation.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lcel/expr.hpp"
#include "lcel/jet_space.hpp"

namespace lcel {

// Every sampled coordinate has |v| in [low, high] with a random sign, which
// keeps samples away from the coordinate hyperplanes (and so from the
// origin singularity of angle nodes).
struct SamplingBox {
  double low = 0.1;
  double high = 2.0;
};

struct EquivalenceOptions {
  int trials = 20;
  double tolerance = 1e-9;
  SamplingBox box;
  std::uint64_t seed = 20240601;
  // Fixed parameter bindings; unbound parameters are sampled like jets.
  std::map<std::string, double> parameters;
  // Total resamples allowed after evaluation errors.
  int max_retries = 200;
};

struct EquivalenceResult {
  bool equivalent = false;
  int trials_run = 0;
  // max |a - b| / (1 + max(|a|, |b|)) over the accepted samples.
  double max_error = 0.0;
  std::optional<Point> witness;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string diagnostic;

  explicit operator bool() const { return equivalent; }
};

struct SymbolSet {
  std::set<std::string> parameters;
  std::set<std::vector<int>> sigma;
};

void collect_symbols(const Expr& e, SymbolSet& out);

// Draws a complete point: every jet up to space.max_jet(), the symbols in
// `symbols`, and the fixed parameters.
Point random_point(const JetSpace& space, const SymbolSet& symbols,
                   const std::map<std::string, double>& parameters, const SamplingBox& box,
                   std::mt19937_64& rng);

EquivalenceResult equivalent(const Expr& a, const Expr& b, const JetSpace& space,
                             const EquivalenceOptions& options = {});

}  // namespace lcel
