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

// Expression grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-' | '+'] integer | '^' '(' ['-'] integer ')')?
//   primary := number | call | jet | identifier | '(' expr ')'
//   call    := ('exp' | 'sin' | 'cos') '(' expr ')' | 'atan2' '(' expr ',' expr ')'
//   jet     := coordinate ("'" | "''" | "'''" | '(' integer ')')?
//
// Numbers (integers and decimals with optional exponent) become exact
// rationals. Identifiers that are neither coordinates nor functions are
// parameters. With abstract_sigma enabled, `sigma` and `phi_<i>_<j>...`
// (1-based coordinate indices) denote the unspecified conformal factor and
// its partial derivatives.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lcel/expr.hpp"
#include "lcel/jet_space.hpp"

namespace lcel {

struct ParseOptions {
  std::vector<std::string> coordinates;
  // When set, any other identifier is rejected as unknown.
  std::optional<std::set<std::string>> parameters;
  bool abstract_sigma = false;
};

Expr parse_expression(std::string_view text, const JetSpace& space, const ParseOptions& options);
Expr parse_expression(std::string_view text, const JetSpace& space,
                      const std::vector<std::string>& coordinates);

bool is_reserved_name(std::string_view name);

}  // namespace lcel
