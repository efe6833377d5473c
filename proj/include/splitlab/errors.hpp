// Copyright 2026 The splitlab Authors
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

#include <stdexcept>
#include <string>

namespace splitlab {

// Malformed arguments: dimension mismatches, bad indices, invalid types.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical tolerance or structural certificate was violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is well formed but outside what an operation supports
// (e.g. a non-commuting or 4-local model handed to the decomposition).
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace splitlab
