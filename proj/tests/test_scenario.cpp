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

#include <doctest.h>

#include "splitlab/scenario.hpp"

using namespace splitlab;
using nlohmann::json;

namespace {

std::string scenario(json model, const std::string& task, json params) {
  json j = {{"schema_version", 1}, {"task", task}, {"params", std::move(params)}};
  if (!model.is_null()) j["model"] = std::move(model);
  return j.dump();
}

const json kRepetition = {{"fixture", "repetition"}, {"n", 3}};

}  // namespace

TEST_CASE("schema violations are rejected before anything runs") {
  CHECK_THROWS_AS(parse_scenario("{not json"), SchemaError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 2, "task": "verify"})"), SchemaError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 1, "task": "verify", "colour": 1})"), SchemaError);
  CHECK_THROWS_AS(parse_scenario(scenario(kRepetition, "attack", {{"restart", 2}})), SchemaError);
  CHECK_THROWS_AS(parse_scenario(scenario(kRepetition, "teleport", json::object())), SchemaError);
  CHECK_THROWS_AS(parse_scenario(scenario({{"fixture", "repetition"}, {"n", "three"}}, "attack", json::object())),
                  SchemaError);
  CHECK_THROWS_AS(
      parse_scenario(scenario(kRepetition, "ids", {{"perturbations", {{{"support", {5}}, {"pauli", "Z"}}}}})),
      SchemaError);
  CHECK_THROWS_AS(
      parse_scenario(scenario(kRepetition, "ids", {{"perturbations", {{{"support", {0}}, {"pauli", "ZZ"}}}}})),
      SchemaError);
  const json bad_matrix = {{"dims", {2}}, {"terms", {{{"sites", {0}}, {"matrix", {{{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}}}}}}};
  CHECK_THROWS_AS(parse_scenario(scenario(bad_matrix, "decompose", json::object())), SchemaError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 1, "task": "verify", "output": {"report": "../x.json"}})"),
                  SchemaError);
}

TEST_CASE("attack on the repetition code reports a splitting of 2") {
  const Scenario s = parse_scenario(scenario(kRepetition, "attack", {{"restarts", 1}, {"expect_delta_e", 2.0}}));
  const RunOutcome out = run_scenario(s);
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report.at("results").at("refined_delta_e").get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(out.report.at("results").at("branch") == "multi_sector");
  CHECK_FALSE(out.csv.has_value());
}

TEST_CASE("[[4,2,2]] detects all single-qubit Paulis") {
  const Scenario s = parse_scenario(scenario({{"fixture", "four_two_two"}}, "ids",
                                             {{"single_site_paulis", true}, {"expect_kl", true}}));
  const RunOutcome out = run_scenario(s);
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report.at("checks").size() == 12);
  CHECK(out.report.at("results").at("perturbations").size() == 12);
}

TEST_CASE("a failed expectation gives exit 3 with the report intact") {
  const json params = {{"perturbations", {{{"support", {0}}, {"pauli", "Z"}}}}, {"expect_kl", true}};
  const RunOutcome out = run_scenario(parse_scenario(scenario(kRepetition, "ids", params)));
  CHECK(out.exit_code == kExitCheckFailed);
  CHECK(out.report.at("checks").at(0).at("passed") == false);
  CHECK(out.report.at("checks").at(0).at("measured").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("decompose on a non-commuting model is unsupported") {
  const json xx = {{{0, 0}, {0, 0}, {0, 0}, {1, 0}},
                   {{0, 0}, {0, 0}, {1, 0}, {0, 0}},
                   {{0, 0}, {1, 0}, {0, 0}, {0, 0}},
                   {{1, 0}, {0, 0}, {0, 0}, {0, 0}}};
  const json zz = {{{1, 0}, {0, 0}, {0, 0}, {0, 0}},
                   {{0, 0}, {-1, 0}, {0, 0}, {0, 0}},
                   {{0, 0}, {0, 0}, {-1, 0}, {0, 0}},
                   {{0, 0}, {0, 0}, {0, 0}, {1, 0}}};
  const json model = {{"dims", {2, 2, 2}},
                      {"terms", {{{"sites", {0, 1}}, {"matrix", xx}}, {{"sites", {1, 2}}, {"matrix", zz}}}}};
  const RunOutcome out = run_scenario(parse_scenario(scenario(model, "decompose", json::object())));
  CHECK(out.exit_code == kExitUnsupported);
  CHECK(out.report.contains("error"));
}

TEST_CASE("decompose reports factor residuals") {
  const json chain = {{"fixture", "subsystem_chain"}, {"sites", 3}, {"seed", 5}};
  const RunOutcome out = run_scenario(parse_scenario(scenario(chain, "decompose", json::object())));
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report.at("results").at("branch") == "pair_factor");
  CHECK(out.report.at("checks").size() == 3);
}

TEST_CASE("stabilizer models and seed overrides") {
  const json model = {{"stabilizers", {"ZZI", "IZZ"}}};
  const std::string text = scenario(model, "attack", {{"restarts", 1}});
  const Scenario a = parse_scenario(text);
  const Scenario b = parse_scenario(text, 99);
  CHECK(a.seed == 0);
  CHECK(b.seed == 99);
  CHECK(run_scenario(a).report.at("results").at("refined_delta_e").get<double>() ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("reports are byte-identical apart from wall clock") {
  const json params = {{"perturbation", {{"support", {1}}, {"pauli", "Z"}}},
                       {"distribution", {{"kind", "uniform"}, {"a", -0.2}, {"b", 0.2}}},
                       {"t_grid", {0.0, 1.0, 2.0}},
                       {"g", 100},
                       {"initial", "random"}};
  const Scenario s = parse_scenario(scenario(kRepetition, "dephase", params));
  const RunOutcome x = run_scenario(s);
  const RunOutcome y = run_scenario(s);
  CHECK(x.exit_code == kExitOk);
  CHECK(report_bytes(strip_wall_clock(x.report)) == report_bytes(strip_wall_clock(y.report)));
  REQUIRE(x.csv.has_value());
  CHECK(*x.csv == *y.csv);
  CHECK(x.csv->rfind("t,pair,predicted,simulated,gap_lhs,gap_rhs,fidelity,fidelity_bound\n", 0) == 0);
  CHECK(x.report.at("scenario_digest") == y.report.at("scenario_digest"));
  CHECK(x.report.at("version") == kArtifactVersion);
}
