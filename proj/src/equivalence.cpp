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

#include "lcel/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "lcel/errors.hpp"
#include "lcel/evaluate.hpp"

namespace lcel {
namespace {

double sample(const SamplingBox& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> magnitude(box.low, box.high);
  std::bernoulli_distribution negative(0.5);
  const double v = magnitude(rng);
  return negative(rng) ? -v : v;
}

}  // namespace

void collect_symbols(const Expr& e, SymbolSet& out) {
  const Node& n = e.node();
  if (n.kind == Kind::kParameter) out.parameters.insert(n.name);
  if (n.kind == Kind::kSigma) out.sigma.insert(n.multi_index);
  for (const Expr& c : n.children) collect_symbols(c, out);
}

Point random_point(const JetSpace& space, const SymbolSet& symbols,
                   const std::map<std::string, double>& parameters, const SamplingBox& box,
                   std::mt19937_64& rng) {
  Point p(space.dim(), space.max_jet());
  for (int i = 1; i <= space.dim(); ++i) {
    for (int s = 0; s <= space.max_jet(); ++s) p.jet(i, s) = sample(box, rng);
  }
  for (const std::string& name : symbols.parameters) {
    auto it = parameters.find(name);
    p.set_parameter(name, it != parameters.end() ? it->second : sample(box, rng));
  }
  for (const auto& [name, value] : parameters) p.set_parameter(name, value);
  for (const std::vector<int>& idx : symbols.sigma) p.set_sigma(idx, sample(box, rng));
  return p;
}

EquivalenceResult equivalent(const Expr& a, const Expr& b, const JetSpace& space,
                             const EquivalenceOptions& options) {
  if (options.trials < 1) throw InvalidArgument("equivalence check needs at least one trial");
  SymbolSet symbols;
  collect_symbols(a, symbols);
  collect_symbols(b, symbols);
  std::mt19937_64 rng(options.seed);
  EquivalenceResult result;
  result.equivalent = true;
  int retries = 0;
  std::string last_error;
  while (result.trials_run < options.trials) {
    Point p = random_point(space, symbols, options.parameters, options.box, rng);
    double va = 0.0;
    double vb = 0.0;
    try {
      va = evaluate(a, p);
      vb = evaluate(b, p);
    } catch (const EvaluationError& err) {
      last_error = err.what();
      if (++retries > options.max_retries) {
        result.equivalent = false;
        result.diagnostic = "evaluation failed after " + std::to_string(retries) +
                            " resamples: " + last_error;
        return result;
      }
      continue;
    }
    ++result.trials_run;
    const double err = std::abs(va - vb) / (1.0 + std::max(std::abs(va), std::abs(vb)));
    result.max_error = std::max(result.max_error, err);
    if (!(std::abs(va - vb) <= options.tolerance * (1.0 + std::max(std::abs(va), std::abs(vb))))) {
      result.equivalent = false;
      result.witness = std::move(p);
      result.lhs = va;
      result.rhs = vb;
      result.diagnostic = "values differ at sample " + std::to_string(result.trials_run);
      return result;
    }
  }
  return result;
}

}  // namespace lcel
