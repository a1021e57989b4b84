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

// The lcel command-line tool: derive, verify, simulate, bell.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lcel/euler_lagrange.hpp"

namespace lcel::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNumericalFailure = 3,
};

struct VerifyOptions {
  int trials = 20;
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
  // Negative control: flips the sign of A^n in the expanded residuals.
  bool inject_fault = false;
};

struct VerifyReport {
  bool passed = false;
  std::string json;
};

VerifyReport verify_model(const LagrangianModel& model, const std::string& name, const VerifyOptions& options);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcel::cli
