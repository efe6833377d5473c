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

// Scenario files: a model, one task and its parameters, validated up front.
// The format is described in schema/scenario.schema.json.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "splitlab/model.hpp"
#include "splitlab/verify.hpp"

namespace splitlab {

inline constexpr const char* kArtifactName = "splitlab";
inline constexpr const char* kArtifactVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitSchema = 2,
  kExitCheckFailed = 3,
  kExitUnsupported = 4,
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Perturbation {
  std::string label;
  std::vector<int> support;
  Matrix op;
};

struct IdsTask {
  std::vector<Perturbation> perturbations;
  std::optional<bool> expect_kl;
  double kl_tol = 1e-10;
  std::optional<double> expect_delta_e;
  double tol = 1e-9;
};

struct AttackTask {
  int restarts = 4;
  int iters = 50;
  std::optional<double> expect_delta_e;  // compared with the refined value
  double tol = 1e-9;
};

struct DecomposeTask {};

struct DephaseTask {
  Perturbation perturbation;
  NoiseDistribution distribution = NoiseDistribution::delta(0.0);
  std::vector<double> t_grid;
  std::vector<double> g{1000.0};
  double epsilon = 0.01;
  std::string initial = "plus";  // "plus" or "random"
  double surrogate_tol = 1e-9;
  std::optional<double> finite_gap_tol;  // applied at the largest g
  int nodes = 64;
};

struct VerifyTask {
  VerifyLevel level = VerifyLevel::kQuick;
};

using TaskParams = std::variant<IdsTask, AttackTask, DecomposeTask, DephaseTask, VerifyTask>;

struct Scenario {
  nlohmann::json raw;
  std::string task;
  std::uint64_t seed = 0;
  std::optional<LocalModel> model;  // absent only for verify
  TaskParams params;
  std::string report_path = "report.json";
  std::string csv_path = "timeseries.csv";
};

/// Parses and validates a scenario, builds its model. Throws SchemaError on
/// malformed JSON, unknown fields, wrong types or inconsistent dimensions.
Scenario parse_scenario(const std::string& text, std::optional<std::uint64_t> seed_override = std::nullopt);

struct RunOutcome {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::optional<std::string> csv;
};

/// Executes the task. Library failures are folded into the report: numerical
/// failures give kExitCheckFailed, unsupported input gives kExitUnsupported.
RunOutcome run_scenario(const Scenario& scenario);

/// The report of `splitlab verify`.
RunOutcome run_verify(VerifyLevel level, std::uint64_t seed);

/// Writes the report (and CSV, if any) under `out_dir`.
void write_outcome(const RunOutcome& outcome, const std::filesystem::path& out_dir,
                   const std::string& report_name = "report.json", const std::string& csv_name = "timeseries.csv");

/// Canonical bytes of a report: two-space indented JSON and a newline.
std::string report_bytes(const nlohmann::json& report);

/// Report without its wall_clock field, for determinism comparisons.
nlohmann::json strip_wall_clock(nlohmann::json report);

}  // namespace splitlab
