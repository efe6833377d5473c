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

// Self-check battery behind `splitlab verify`. Every check reports its
// measured value, the bound it is compared against, and the property it
// certifies.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace splitlab {

enum class VerifyLevel { kQuick, kFull };

struct CheckResult {
  std::string name;
  std::string property;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // how measured compares to bound when passing, e.g. "<=" or ">="
  std::string detail;
  double seconds = 0.0;
};

std::vector<CheckResult> run_verify_suite(VerifyLevel level, std::uint64_t seed = 0);

/// Names of the checks run_verify_suite produces, in order.
std::vector<std::string> verify_check_names();

nlohmann::json to_json(const CheckResult& check);

/// A double as JSON; non-finite values become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double x);

}  // namespace splitlab
