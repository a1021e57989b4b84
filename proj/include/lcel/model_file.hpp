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

// Model files: `key = value` lines, `#` comments, and an optional
// `simulation { ... }` block.
//
//   dim = 2
//   order = 2
//   coordinates = x, y
//   lagrangian = -lambda/2*(x'*y'' - y'*x'') + m/2*(x'^2 + y'^2)
//   sigma = 2*atan2(y, x)          # or `abstract`; defaults to 0
//   parameters = lambda=1, m=1
//   simulation {
//     t0 = 0
//     t1 = 1
//     dt = 1e-4
//     init = x=1, x'=0, x''=-0.5, y=0.5, y'=0.8, y''=0
//   }

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcel/errors.hpp"
#include "lcel/euler_lagrange.hpp"

namespace lcel {

// Error codes for model-file problems.
inline constexpr const char* kSyntaxError = "E_SYNTAX";
inline constexpr const char* kMissingKey = "E_MISSING_KEY";
inline constexpr const char* kBadValue = "E_VALUE";
inline constexpr const char* kCoordinateCount = "E_COORD_COUNT";
inline constexpr const char* kLagrangianOrder = "E_LAGRANGIAN_ORDER";
inline constexpr const char* kSigmaOrder = "E_SIGMA_ORDER";
inline constexpr const char* kExpressionParse = "E_EXPR_PARSE";

class ModelFileError : public InvalidArgument {
 public:
  // line is 1-based, 0 when not tied to a line.
  ModelFileError(std::string code, const std::string& message, int line = 0);

  const std::string& code() const { return code_; }
  int line() const { return line_; }

 private:
  std::string code_;
  int line_;
};

struct SimulationBlock {
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<double> dt;
  // Jet label (x, x', x(4), ...) and value, in file order.
  std::vector<std::pair<std::string, double>> init;
};

struct ModelFile {
  int dim = 0;
  int order = 0;
  std::vector<std::string> coordinates;
  std::string lagrangian;
  // Expression text, or "abstract".
  std::string sigma = "0";
  std::map<std::string, double> parameters;
  std::optional<SimulationBlock> simulation;
  // Line of each key, for error reporting.
  std::map<std::string, int> lines;
};

ModelFile parse_model_file(std::string_view text);
// Throws ModelFileError with E_SYNTAX when the file cannot be read.
ModelFile read_model_file(const std::filesystem::path& path);

// Validates and builds the model.
LagrangianModel build_model(const ModelFile& file);

// "a=1, b=2" into ordered pairs. Throws ModelFileError (E_SYNTAX/E_VALUE).
std::vector<std::pair<std::string, double>> parse_assignments(std::string_view text, int line = 0);

// Resolves jet labels against the model.
std::map<JetKey, double> resolve_jets(const LagrangianModel& model,
                                      const std::vector<std::pair<std::string, double>>& values);

}  // namespace lcel
