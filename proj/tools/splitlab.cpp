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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "splitlab/scenario.hpp"

namespace {

void apply_thread_cap() {
  if (const char* env = std::getenv("SPLITLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

void summarize(const splitlab::RunOutcome& outcome) {
  for (const auto& c : outcome.report.at("checks"))
    std::cout << (c.at("passed").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>() << "  measured "
              << c.at("measured").dump() << " " << c.at("relation").get<std::string>() << " "
              << c.at("bound").dump() << "\n";
  if (outcome.report.contains("error")) std::cerr << "error: " << outcome.report.at("error").get<std::string>() << "\n";
  std::cout << "status: " << outcome.report.at("status").get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degeneracy splitting of commuting local-Hamiltonian codes"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "Overrides the scenario seed");

  bool quick = false;
  bool full = false;
  std::string verify_out = ".";
  std::uint64_t verify_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run the self-check battery");
  auto* quick_flag = verify->add_flag("--quick", quick, "Reduced sample counts (default)");
  verify->add_flag("--full", full, "Full sample counts")->excludes(quick_flag);
  verify->add_option("--out", verify_out, "Output directory");
  verify->add_option("--seed", verify_seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : splitlab::kExitSchema;
  }
  apply_thread_cap();

  try {
    if (*run) {
      std::ifstream in(scenario_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read " << scenario_path << "\n";
        return splitlab::kExitSchema;
      }
      std::ostringstream text;
      text << in.rdbuf();
      splitlab::Scenario scenario;
      try {
        scenario = splitlab::parse_scenario(text.str(), seed);
      } catch (const splitlab::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return splitlab::kExitSchema;
      }
      const splitlab::RunOutcome outcome = splitlab::run_scenario(scenario);
      splitlab::write_outcome(outcome, out_dir, scenario.report_path, scenario.csv_path);
      summarize(outcome);
      return outcome.exit_code;
    }
    const auto level = full ? splitlab::VerifyLevel::kFull : splitlab::VerifyLevel::kQuick;
    const splitlab::RunOutcome outcome = splitlab::run_verify(level, verify_seed);
    splitlab::write_outcome(outcome, verify_out);
    summarize(outcome);
    return outcome.exit_code;
  } catch (const splitlab::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return splitlab::kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
