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

#include <string>
#include <vector>

#include "lcel/expr.hpp"

namespace lcel {

enum class Format { kText, kLatex };

// Prints in the parser's grammar (kText) or as LaTeX. Jet (i, s) uses
// coordinates[i - 1] when available and `q<i>` otherwise.
std::string to_string(const Expr& e, const std::vector<std::string>& coordinates,
                      Format format = Format::kText);

// Jet label in text form: x, x', x'', x''', x(4), ...
std::string jet_label(const std::vector<std::string>& coordinates, JetKey key);

}  // namespace lcel
