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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Numeric evaluation hit a singular point (division by zero, the origin of
// an angle node, an unbound symbol, or a non-finite value).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// A total derivative would produce a jet order beyond the ambient max_jet.
class JetOrderOverflow : public Error {
 public:
  using Error::Error;
};

// The residual system cannot be solved for its highest jets.
class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& message, double time)
      : Error(message), time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace lcel
