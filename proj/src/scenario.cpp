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

#include "splitlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <type_traits>

#include "splitlab/decomposition.hpp"
#include "splitlab/dynamics.hpp"
#include "splitlab/ids.hpp"
#include "splitlab/random.hpp"

namespace splitlab {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw SchemaError(path + ": " + msg); }

void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; });
    if (!known) fail(path, "unknown field \"" + it.key() + "\"");
  }
}

const json& required(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double get_positive(const json& j, const std::string& path) {
  const double v = get_number(j, path);
  if (v <= 0.0) fail(path, "expected a positive number");
  return v;
}

int get_int(const json& j, const std::string& path, int lo, int hi) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < lo || v > hi) fail(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::uint64_t get_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(path, "expected a non-negative integer");
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& path, bool allow_empty = false) {
  if (!j.is_array()) fail(path, "expected an array");
  if (!allow_empty && j.empty()) fail(path, "expected a non-empty array");
  return j;
}

std::vector<int> get_int_array(const json& j, const std::string& path, int lo, int hi) {
  std::vector<int> out;
  for (std::size_t k = 0; k < get_array(j, path).size(); ++k) out.push_back(get_int(j[k], child(path, k), lo, hi));
  return out;
}

std::vector<double> get_number_array(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t k = 0; k < get_array(j, path).size(); ++k) out.push_back(get_number(j[k], child(path, k)));
  return out;
}

Matrix parse_matrix(const json& j, const std::string& path) {
  const json& rows = get_array(j, path);
  const std::size_t n = rows.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = child(path, r);
    const json& row = get_array(rows[r], rp);
    if (row.size() != n) fail(rp, "matrix must be square");
    for (std::size_t c = 0; c < n; ++c) {
      const std::string cp = child(rp, c);
      if (!row[c].is_array() || row[c].size() != 2) fail(cp, "expected a [re, im] pair");
      m(r, c) = Complex(get_number(row[c][0], cp), get_number(row[c][1], cp));
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::vector<int> parse_support(const json& j, const std::string& path, const QuditSystem& system) {
  std::vector<int> support = get_int_array(j, path, 0, system.size() - 1);
  if (std::set<int>(support.begin(), support.end()).size() != support.size()) fail(path, "repeated site");
  return support;
}

// ---------------------------------------------------------------------------
// Models

LocalModel apply_grouping(LocalModel model, const json& j, const std::string& path) {
  if (!j.contains("grouping")) return model;
  const std::string gp = child(path, "grouping");
  std::vector<std::vector<int>> groups;
  for (std::size_t k = 0; k < get_array(j.at("grouping"), gp).size(); ++k)
    groups.push_back(get_int_array(j.at("grouping")[k], child(gp, k), 0, model.system().size() - 1));
  return block_sites(model, groups);
}

LocalModel parse_fixture(const json& j, const std::string& path, std::uint64_t seed) {
  const std::string name = get_string(j.at("fixture"), child(path, "fixture"));
  if (name == "repetition") {
    require_object(j, path, {"fixture", "n", "grouping"});
    return repetition_code_model(get_int(required(j, "n", path), child(path, "n"), 2, 12));
  }
  if (name == "four_two_two") {
    require_object(j, path, {"fixture", "grouping"});
    return four_two_two_model();
  }
  if (name == "random_commuting") {
    require_object(j, path, {"fixture", "dims", "pairs", "seed", "levels", "grouping"});
    const Dims dims = get_int_array(required(j, "dims", path), child(path, "dims"), 2, 64);
    const QuditSystem system(dims);
    const std::string pp = child(path, "pairs");
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t k = 0; k < get_array(required(j, "pairs", path), pp).size(); ++k) {
      const std::vector<int> p = parse_support(j.at("pairs")[k], child(pp, k), system);
      if (p.size() != 2) fail(child(pp, k), "expected a pair of sites");
      pairs.emplace_back(p[0], p[1]);
    }
    const std::uint64_t s = j.contains("seed") ? get_seed(j.at("seed"), child(path, "seed")) : seed;
    CouplingOptions options;
    if (j.contains("levels")) options.levels = get_int(j.at("levels"), child(path, "levels"), 0, 1000);
    return random_commuting_model(system, pairs, s, options);
  }
  if (name == "subsystem_chain") {
    require_object(j, path, {"fixture", "sites", "virtual_dim", "pair_rank", "multiplicity", "seed", "grouping"});
    SubsystemChainOptions o;
    if (j.contains("sites")) o.sites = get_int(j.at("sites"), child(path, "sites"), 2, 8);
    if (j.contains("virtual_dim")) o.virtual_dim = get_int(j.at("virtual_dim"), child(path, "virtual_dim"), 1, 8);
    if (j.contains("pair_rank")) o.pair_rank = get_int(j.at("pair_rank"), child(path, "pair_rank"), 1, 64);
    if (j.contains("multiplicity"))
      o.multiplicity = get_int(j.at("multiplicity"), child(path, "multiplicity"), 1, 8);
    const std::uint64_t s = j.contains("seed") ? get_seed(j.at("seed"), child(path, "seed")) : seed;
    return random_subsystem_chain(o, s);
  }
  fail(child(path, "fixture"), "unknown fixture \"" + name + "\"");
}

LocalModel parse_inline(const json& j, const std::string& path) {
  require_object(j, path, {"dims", "terms", "stabilizers", "grouping"});
  if (j.contains("terms") == j.contains("stabilizers")) fail(path, "exactly one of \"terms\" or \"stabilizers\"");

  if (j.contains("stabilizers")) {
    const std::string sp = child(path, "stabilizers");
    std::vector<std::string> gens;
    for (std::size_t k = 0; k < get_array(j.at("stabilizers"), sp).size(); ++k)
      gens.push_back(get_string(j.at("stabilizers")[k], child(sp, k)));
    const auto length = [](const std::string& g) {
      return static_cast<int>(g.size()) - ((!g.empty() && (g[0] == '+' || g[0] == '-')) ? 1 : 0);
    };
    const int n = length(gens.front());
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (length(gens[k]) != n) fail(child(sp, k), "generators must have equal length");
    if (j.contains("dims")) {
      const Dims dims = get_int_array(j.at("dims"), child(path, "dims"), 2, 2);
      if (static_cast<int>(dims.size()) != n) fail(child(path, "dims"), "does not match the generator length");
    }
    return stabilizer_hamiltonian(n, gens);
  }

  const QuditSystem system(get_int_array(required(j, "dims", path), child(path, "dims"), 2, 64));
  const std::string tp = child(path, "terms");
  std::vector<LocalTerm> terms;
  for (std::size_t k = 0; k < get_array(j.at("terms"), tp).size(); ++k) {
    const std::string p = child(tp, k);
    const json& t = j.at("terms")[k];
    require_object(t, p, {"sites", "matrix"});
    std::vector<int> sites = parse_support(required(t, "sites", p), child(p, "sites"), system);
    Matrix op = parse_matrix(required(t, "matrix", p), child(p, "matrix"));
    if (op.rows() != total_dim(support_dims(system, sites))) fail(child(p, "matrix"), "size does not match sites");
    terms.push_back({std::move(sites), std::move(op)});
  }
  return build_local_model(system, std::move(terms));
}

LocalModel parse_model(const json& j, std::uint64_t seed) {
  const std::string path = "model";
  if (!j.is_object()) fail(path, "expected an object");
  LocalModel model = j.contains("fixture") ? parse_fixture(j, path, seed) : parse_inline(j, path);
  return apply_grouping(std::move(model), j, path);
}

// ---------------------------------------------------------------------------
// Task parameters

Perturbation parse_perturbation(const json& j, const std::string& path, const QuditSystem& system) {
  require_object(j, path, {"label", "support", "pauli", "matrix"});
  Perturbation p;
  p.support = parse_support(required(j, "support", path), child(path, "support"), system);
  if (j.contains("pauli") == j.contains("matrix")) fail(path, "exactly one of \"pauli\" or \"matrix\"");
  std::string label;
  if (j.contains("pauli")) {
    const std::string s = get_string(j.at("pauli"), child(path, "pauli"));
    if (s.size() != p.support.size()) fail(child(path, "pauli"), "length must match the support");
    p.op = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (std::string("IXYZ").find(s[k]) == std::string::npos) fail(child(path, "pauli"), "expected I, X, Y or Z");
      if (system.site_dim(p.support[k]) != 2) fail(child(path, "pauli"), "Pauli on a site that is not a qubit");
      p.op = kron(p.op, pauli(s[k]));
      label += s[k] + std::to_string(p.support[k]);
    }
  } else {
    p.op = parse_matrix(j.at("matrix"), child(path, "matrix"));
    if (p.op.rows() != total_dim(support_dims(system, p.support)))
      fail(child(path, "matrix"), "size does not match the support");
    label = "matrix";
    for (int s : p.support) label += "_" + std::to_string(s);
  }
  HermOp(p.op, support_dims(system, p.support));
  p.label = j.contains("label") ? get_string(j.at("label"), child(path, "label")) : label;
  return p;
}

NoiseDistribution parse_distribution(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::string kind = get_string(required(j, "kind", path), child(path, "kind"));
  if (kind == "gaussian") {
    require_object(j, path, {"kind", "mean", "std"});
    return NoiseDistribution::gaussian(get_number(required(j, "mean", path), child(path, "mean")),
                                       get_positive(required(j, "std", path), child(path, "std")));
  }
  if (kind == "uniform") {
    require_object(j, path, {"kind", "a", "b"});
    return NoiseDistribution::uniform(get_number(required(j, "a", path), child(path, "a")),
                                      get_number(required(j, "b", path), child(path, "b")));
  }
  if (kind == "discrete") {
    require_object(j, path, {"kind", "values", "probs"});
    return NoiseDistribution::discrete(get_number_array(required(j, "values", path), child(path, "values")),
                                       get_number_array(required(j, "probs", path), child(path, "probs")));
  }
  if (kind == "delta") {
    require_object(j, path, {"kind", "value"});
    return NoiseDistribution::delta(get_number(required(j, "value", path), child(path, "value")));
  }
  fail(child(path, "kind"), "unknown distribution \"" + kind + "\"");
}

std::vector<double> parse_t_grid(const json& j, const std::string& path) {
  if (j.is_array()) {
    std::vector<double> ts = get_number_array(j, path);
    for (std::size_t k = 0; k < ts.size(); ++k)
      if (ts[k] < 0.0) fail(child(path, k), "times must be non-negative");
    return ts;
  }
  require_object(j, path, {"start", "stop", "points"});
  const double a = get_number(required(j, "start", path), child(path, "start"));
  const double b = get_number(required(j, "stop", path), child(path, "stop"));
  const int n = get_int(required(j, "points", path), child(path, "points"), 1, 100000);
  if (a < 0.0 || b < a) fail(path, "expected 0 <= start <= stop");
  std::vector<double> ts(n);
  for (int k = 0; k < n; ++k) ts[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return ts;
}

IdsTask parse_ids(const json& j, const std::string& path, const QuditSystem& system) {
  require_object(j, path, {"perturbations", "single_site_paulis", "expect_kl", "kl_tol", "expect_delta_e", "tol"});
  IdsTask t;
  if (j.contains("perturbations")) {
    const std::string pp = child(path, "perturbations");
    for (std::size_t k = 0; k < get_array(j.at("perturbations"), pp).size(); ++k)
      t.perturbations.push_back(parse_perturbation(j.at("perturbations")[k], child(pp, k), system));
  }
  if (j.contains("single_site_paulis") && get_bool(j.at("single_site_paulis"), child(path, "single_site_paulis"))) {
    for (int s = 0; s < system.size(); ++s) {
      if (system.site_dim(s) != 2) fail(child(path, "single_site_paulis"), "requires every site to be a qubit");
      for (char c : {'X', 'Y', 'Z'}) t.perturbations.push_back({c + std::to_string(s), {s}, pauli(c)});
    }
  }
  if (t.perturbations.empty()) fail(path, "no perturbations given");
  if (j.contains("expect_kl")) t.expect_kl = get_bool(j.at("expect_kl"), child(path, "expect_kl"));
  if (j.contains("kl_tol")) t.kl_tol = get_positive(j.at("kl_tol"), child(path, "kl_tol"));
  if (j.contains("expect_delta_e")) t.expect_delta_e = get_number(j.at("expect_delta_e"), child(path, "expect_delta_e"));
  if (j.contains("tol")) t.tol = get_positive(j.at("tol"), child(path, "tol"));
  return t;
}

AttackTask parse_attack(const json& j, const std::string& path) {
  require_object(j, path, {"restarts", "iters", "expect_delta_e", "tol"});
  AttackTask t;
  if (j.contains("restarts")) t.restarts = get_int(j.at("restarts"), child(path, "restarts"), 0, 1000);
  if (j.contains("iters")) t.iters = get_int(j.at("iters"), child(path, "iters"), 1, 100000);
  if (j.contains("expect_delta_e")) t.expect_delta_e = get_number(j.at("expect_delta_e"), child(path, "expect_delta_e"));
  if (j.contains("tol")) t.tol = get_positive(j.at("tol"), child(path, "tol"));
  return t;
}

DephaseTask parse_dephase(const json& j, const std::string& path, const QuditSystem& system) {
  require_object(j, path, {"perturbation", "distribution", "t_grid", "g", "epsilon", "initial", "surrogate_tol",
                           "finite_gap_tol", "nodes"});
  DephaseTask t;
  t.perturbation = parse_perturbation(required(j, "perturbation", path), child(path, "perturbation"), system);
  t.distribution = parse_distribution(required(j, "distribution", path), child(path, "distribution"));
  t.t_grid = parse_t_grid(required(j, "t_grid", path), child(path, "t_grid"));
  if (j.contains("g")) {
    const std::string gp = child(path, "g");
    t.g = j.at("g").is_array() ? get_number_array(j.at("g"), gp) : std::vector<double>{get_number(j.at("g"), gp)};
    for (double g : t.g)
      if (g <= 0.0) fail(gp, "gap scales must be positive");
    std::sort(t.g.begin(), t.g.end());
  }
  if (j.contains("epsilon")) {
    t.epsilon = get_positive(j.at("epsilon"), child(path, "epsilon"));
    if (t.epsilon >= 1.0) fail(child(path, "epsilon"), "expected a value in (0, 1)");
  }
  if (j.contains("initial")) {
    t.initial = get_string(j.at("initial"), child(path, "initial"));
    if (t.initial != "plus" && t.initial != "random") fail(child(path, "initial"), "expected \"plus\" or \"random\"");
  }
  if (j.contains("surrogate_tol")) t.surrogate_tol = get_positive(j.at("surrogate_tol"), child(path, "surrogate_tol"));
  if (j.contains("finite_gap_tol"))
    t.finite_gap_tol = get_positive(j.at("finite_gap_tol"), child(path, "finite_gap_tol"));
  if (j.contains("nodes")) t.nodes = get_int(j.at("nodes"), child(path, "nodes"), 1, 1024);
  return t;
}

VerifyTask parse_verify(const json& j, const std::string& path) {
  require_object(j, path, {"level"});
  VerifyTask t;
  if (j.contains("level")) {
    const std::string level = get_string(j.at("level"), child(path, "level"));
    if (level == "full") {
      t.level = VerifyLevel::kFull;
    } else if (level != "quick") {
      fail(child(path, "level"), "expected \"quick\" or \"full\"");
    }
  }
  return t;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Task execution

struct TaskOutput {
  std::vector<CheckResult> checks;
  json results = json::object();
  std::optional<std::string> csv;
};

CheckResult make_check(std::string name, std::string property, double measured, double bound, bool at_most) {
  const bool passed = at_most ? measured <= bound : measured >= bound;
  return {std::move(name), std::move(property), passed, measured, bound, at_most ? "<=" : ">=", {}, 0.0};
}

json code_json(const CodeSubspace& code) {
  return {{"dimension", code.dim()}, {"degeneracy", code.degeneracy()}, {"gap", json_number(code.gap())}};
}

CodeSubspace model_code(const LocalModel& m) { return ground_subspace(m.hamiltonian(), m.system().dims()); }

TaskOutput run_ids(const LocalModel& model, const IdsTask& task) {
  TaskOutput out;
  const CodeSubspace code = model_code(model);
  out.results["code"] = code_json(code);
  json rows = json::array();
  for (const Perturbation& p : task.perturbations) {
    const IdsReport r = ids_local(code, p.op, p.support);
    const KlResult kl = kl_check_local(code, p.op, p.support, task.kl_tol);
    rows.push_back({{"label", p.label},
                    {"support", p.support},
                    {"delta_e", r.delta_e},
                    {"lambda_min", r.lambda_min},
                    {"lambda_max", r.lambda_max},
                    {"alpha_opt", r.alpha_opt},
                    {"kl_deviation", kl.deviation},
                    {"kl_satisfied", kl.satisfied}});
    if (task.expect_kl) {
      const double bound = task.kl_tol * operator_norm(p.op);
      CheckResult c = make_check("kl:" + p.label, "error-detection condition holds as expected", kl.deviation, bound,
                                 *task.expect_kl);
      if (!*task.expect_kl) {
        c.relation = ">";
        c.passed = kl.deviation > bound;
      }
      out.checks.push_back(std::move(c));
    }
    if (task.expect_delta_e)
      out.checks.push_back(make_check("delta_e:" + p.label, "splitting matches the expected value",
                                      std::abs(r.delta_e - *task.expect_delta_e), task.tol, true));
  }
  out.results["perturbations"] = rows;
  return out;
}

TaskOutput run_attack(const LocalModel& model, const AttackTask& task, std::uint64_t seed) {
  TaskOutput out;
  const CodeSubspace code = model_code(model);
  UniversalAttackOptions o;
  o.restarts = task.restarts;
  o.ascent.iters = task.iters;
  o.seed = seed;
  const UniversalAttackReport r = universal_attack(model, code, o);
  out.results = to_json(r);
  out.results["code"] = code_json(code);
  out.results["analytic_x"] = matrix_to_json(r.analytic.x.matrix());
  out.results["refined_x"] = matrix_to_json(r.refined.x.matrix());
  const bool multi = r.branch == AttackBranch::kMultiSector;
  out.checks.push_back(make_check("attack_analytic_bound",
                                  multi ? "multi-sector single-site splitting of at least 1"
                                        : "single-site splitting of at least 1/3",
                                  r.analytic.certified_delta_e, (multi ? 1.0 : 1.0 / 3.0) - 1e-9, false));
  out.checks.push_back(make_check("attack_certificate", "certified value does not exceed the measured splitting",
                                  r.analytic.certified_delta_e - r.measured_delta_e, 1e-9, true));
  if (task.expect_delta_e)
    out.checks.push_back(make_check("attack_refined_delta_e", "refined splitting matches the expected value",
                                    std::abs(r.refined.certified_delta_e - *task.expect_delta_e), task.tol, true));
  return out;
}

TaskOutput run_decompose(const LocalModel& model, std::uint64_t seed) {
  if (!model.is_two_local()) throw UnsupportedInput("decompose: model is not 2-local");
  if (!model.commuting()) throw UnsupportedInput("decompose: model terms do not commute");
  TaskOutput out;
  const CodeSubspace code = model_code(model);
  out.results["code"] = code_json(code);
  std::vector<SiteSectorDecomposition> decomps;
  bool multi = false;
  json sites = json::array();
  for (int i = 0; i < model.system().size(); ++i) {
    decomps.push_back(sector_projectors(model, i, seed + static_cast<std::uint64_t>(i)));
    const SectorSupport s = detect_multi_sector(code, decomps.back());
    multi = multi || s.multi_sector();
    json dims = json::array();
    for (const Projector& p : decomps.back().projectors) dims.push_back(p.rank());
    sites.push_back({{"site", i},
                     {"algebra_dim", decomps.back().algebra_dim},
                     {"sector_dims", dims},
                     {"populated", s.sectors},
                     {"block_certificate", decomps.back().block_certificate}});
  }
  out.results["sites"] = sites;
  if (multi) {
    out.results["branch"] = to_string(AttackBranch::kMultiSector);
    return out;
  }
  const GroundFactorization f = factor_ground_projector_unchecked(model, code, decomps, seed);
  const bool entangled = std::any_of(f.pairs.begin(), f.pairs.end(), [](const PairFactor& p) { return p.rank >= 2; });
  out.results["branch"] = to_string(entangled ? AttackBranch::kPairFactor : AttackBranch::kMultiplicity);
  json pairs = json::array();
  for (const PairFactor& p : f.pairs) pairs.push_back({{"sites", {p.sites.first, p.sites.second}}, {"rank", p.rank}});
  out.results["factorization"] = {{"virtual_dims", f.virtual_dims()},
                                  {"pairs", pairs},
                                  {"units_residual", f.units_residual},
                                  {"support_residual", f.support_residual},
                                  {"reconstruction_error", f.reconstruction_error}};
  out.checks.push_back(make_check("units_residual", "matrix units reproduce each pair algebra", f.units_residual,
                                  1e-6, true));
  out.checks.push_back(make_check("support_residual", "code lies in the virtual-subsystem sector",
                                  f.support_residual, 1e-6, true));
  out.checks.push_back(make_check("reconstruction_error", "code projector is the product of pair projectors",
                                  f.reconstruction_error, 1e-6, true));
  return out;
}

TaskOutput run_dephase(const LocalModel& model, const DephaseTask& task, std::uint64_t seed) {
  TaskOutput out;
  const Matrix h0 = model.hamiltonian();
  const Dims& dims = model.system().dims();
  const CodeSubspace code = model_code(model);
  const Matrix v = embed_operator(task.perturbation.op, task.perturbation.support, dims);
  const DephasingProfile profile = dephasing_profile(code, v);
  const IdsReport r = ids(code, v);
  const int d = code.degeneracy();

  Vector psi;
  if (task.initial == "plus") {
    psi = (profile.lifted.col(0) + profile.lifted.col(d - 1)) / std::sqrt(2.0);
    if (d == 1) psi = profile.lifted.col(0);
  } else {
    Rng rng(seed);
    psi = code.basis() * random_gaussian(d, 1, rng);
  }
  const Ket ket = Ket::normalized(psi, dims);
  const Matrix rho0 = ket.outer();

  MixtureOptions mix;
  mix.nodes = task.nodes;
  mix.seed = seed;

  const CoherenceReport coh = coherence_time(task.distribution, r.delta_e, task.epsilon);
  out.results["code"] = code_json(code);
  out.results["distribution"] = task.distribution.name();
  out.results["delta_e"] = r.delta_e;
  out.results["coherence"] = {{"epsilon", coh.epsilon},     {"c_eps", json_number(coh.c_eps)},
                              {"tau_eps", json_number(coh.tau_eps)}, {"c_small", json_number(coh.c_small)},
                              {"tau_small", json_number(coh.tau_small)}};

  double surrogate_dev = 0.0;
  std::vector<double> finite_dev(task.g.size(), 0.0);
  std::vector<TimeSeriesRow> rows;
  const std::vector<FidelityRow> fid = fidelity_bound_check(code, v, task.distribution, ket, task.t_grid, mix);
  std::vector<std::vector<GapBoundRow>> gap_rows;
  const double g_top = task.g.back();
  for (double g : task.g) gap_rows.push_back(gap_bound_check(h0, code, v, g, task.t_grid));

  for (std::size_t k = 0; k < task.t_grid.size(); ++k) {
    const double t = task.t_grid[k];
    const Matrix predicted = predict_dephasing(code, v, task.distribution, rho0, t);
    surrogate_dev = std::max(surrogate_dev,
                             max_abs_deviation(evolve_surrogate(code, v, task.distribution, rho0, t, mix), predicted));
    Matrix top;
    for (std::size_t gi = 0; gi < task.g.size(); ++gi) {
      const Matrix sim = evolve_mixture(h0, task.g[gi], v, task.distribution, rho0, t, mix);
      finite_dev[gi] = std::max(finite_dev[gi], max_abs_deviation(sim, predicted));
      if (gi + 1 == task.g.size()) top = sim;
    }
    const Matrix pe = profile.lifted.adjoint() * predicted * profile.lifted;
    const Matrix se = profile.lifted.adjoint() * top * profile.lifted;
    for (int m = 0; m < d; ++m)
      for (int n = m + 1; n < d; ++n)
        rows.push_back({t, std::to_string(m) + "-" + std::to_string(n), std::abs(pe(m, n)), std::abs(se(m, n)),
                        gap_rows.back()[k].lhs, gap_rows.back()[k].rhs, fid[k].fidelity, fid[k].bound});
  }

  json g_json = json::array();
  double worst_gap_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t gi = 0; gi < task.g.size(); ++gi) {
    double peak = 0.0;
    for (const GapBoundRow& row : gap_rows[gi]) {
      peak = std::max(peak, row.lhs);
      worst_gap_excess = std::max(worst_gap_excess, row.lhs - row.rhs);
    }
    g_json.push_back({{"g", task.g[gi]}, {"max_deviation", finite_dev[gi]}, {"max_gap_lhs", peak}});
  }
  out.results["finite_gap"] = g_json;
  out.results["surrogate_deviation"] = surrogate_dev;
  out.results["csv_g"] = g_top;

  double worst_fid = -std::numeric_limits<double>::infinity();
  for (const FidelityRow& row : fid) worst_fid = std::max(worst_fid, row.bound - row.fidelity);

  out.checks.push_back(make_check("dephasing_surrogate", "P V P mixture matches the characteristic-function prediction",
                                  surrogate_dev, task.surrogate_tol, true));
  out.checks.push_back(make_check("gap_bound", "finite-gap evolution stays within 4||V||(||V||t+1)/(g E_gap)",
                                  worst_gap_excess, 0.0, true));
  out.checks.push_back(make_check("fidelity_bound", "F >= 1 - t^2 <lambda^2> dE^2 / 8", worst_fid, 1e-12, true));
  if (task.finite_gap_tol)
    out.checks.push_back(make_check("dephasing_finite_gap", "largest-g mixture matches the infinite-gap dephasing",
                                    finite_dev.back(), *task.finite_gap_tol, true));

  std::ostringstream csv;
  write_time_series_csv(csv, rows);
  out.csv = csv.str();
  return out;
}

TaskOutput run_verify_task(const VerifyTask& task, std::uint64_t seed, json& wall_clock) {
  TaskOutput out;
  out.checks = run_verify_suite(task.level, seed);
  json timings = json::object();
  for (const CheckResult& c : out.checks) timings[c.name] = c.seconds;
  wall_clock["checks"] = timings;
  out.results["level"] = task.level == VerifyLevel::kFull ? "full" : "quick";
  return out;
}

RunOutcome assemble(const std::string& digest, const std::string& task, std::uint64_t seed,
                    const std::function<TaskOutput(json&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  json wall_clock = json::object();
  RunOutcome outcome;
  TaskOutput out;
  std::optional<std::string> error;
  try {
    out = body(wall_clock);
  } catch (const UnsupportedInput& e) {
    outcome.exit_code = kExitUnsupported;
    error = e.what();
  } catch (const NumericalError& e) {
    outcome.exit_code = kExitCheckFailed;
    error = e.what();
    out.checks.push_back({"numerical_error", "computation stayed within its numerical certificates", false, 0.0, 0.0,
                          "<=", e.what(), 0.0});
  }
  const bool all_pass = std::all_of(out.checks.begin(), out.checks.end(), [](const CheckResult& c) { return c.passed; });
  if (outcome.exit_code == kExitOk && !all_pass) outcome.exit_code = kExitCheckFailed;

  json checks = json::array();
  for (const CheckResult& c : out.checks) checks.push_back(to_json(c));
  json& rep = outcome.report;
  rep["artifact"] = kArtifactName;
  rep["version"] = kArtifactVersion;
  rep["scenario_digest"] = digest;
  rep["task"] = task;
  rep["seed"] = seed;
  rep["status"] = outcome.exit_code == kExitOk ? "pass" : (outcome.exit_code == kExitUnsupported ? "unsupported" : "fail");
  rep["exit_code"] = outcome.exit_code;
  if (error) rep["error"] = *error;
  rep["checks"] = checks;
  rep["results"] = out.results;
  wall_clock["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep["wall_clock"] = wall_clock;
  outcome.csv = std::move(out.csv);
  return outcome;
}

}  // namespace

Scenario parse_scenario(const std::string& text, std::optional<std::uint64_t> seed_override) {
  json raw;
  try {
    raw = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
  }
  const std::string root = "scenario";
  require_object(raw, root, {"schema_version", "model", "task", "params", "seed", "output"});
  if (get_int(required(raw, "schema_version", root), "schema_version", 0, 1000) != 1)
    fail("schema_version", "only version 1 is supported");

  Scenario s;
  s.raw = raw;
  s.task = get_string(required(raw, "task", root), "task");
  s.seed = raw.contains("seed") ? get_seed(raw.at("seed"), "seed") : 0;
  if (seed_override) s.seed = *seed_override;

  if (raw.contains("output")) {
    const json& o = raw.at("output");
    require_object(o, "output", {"report", "csv"});
    if (o.contains("report")) s.report_path = get_string(o.at("report"), "output.report");
    if (o.contains("csv")) s.csv_path = get_string(o.at("csv"), "output.csv");
    for (const std::string& p : {s.report_path, s.csv_path}) {
      const std::filesystem::path fp(p);
      if (p.empty() || fp.is_absolute() || fp.filename() != fp) fail("output", "file names must be plain names");
    }
  }

  const json params = raw.contains("params") ? raw.at("params") : json::object();
  try {
    if (s.task == "verify") {
      if (raw.contains("model")) fail("model", "verify takes no model");
      s.params = parse_verify(params, "params");
      return s;
    }
    s.model = parse_model(required(raw, "model", root), s.seed);
    const QuditSystem& system = s.model->system();
    if (s.task == "ids") {
      s.params = parse_ids(params, "params", system);
    } else if (s.task == "attack") {
      s.params = parse_attack(params, "params");
    } else if (s.task == "decompose") {
      require_object(params, "params", {});
      s.params = DecomposeTask{};
    } else if (s.task == "dephase") {
      s.params = parse_dephase(params, "params", system);
    } else {
      fail("task", "unknown task \"" + s.task + "\"");
    }
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
  return s;
}

RunOutcome run_scenario(const Scenario& s) {
  const std::string digest = fnv1a_hex(s.raw.dump());
  return assemble(digest, s.task, s.seed, [&](json& wall_clock) -> TaskOutput {
    return std::visit(
        [&](const auto& p) -> TaskOutput {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, IdsTask>) return run_ids(*s.model, p);
          else if constexpr (std::is_same_v<T, AttackTask>) return run_attack(*s.model, p, s.seed);
          else if constexpr (std::is_same_v<T, DecomposeTask>) return run_decompose(*s.model, s.seed);
          else if constexpr (std::is_same_v<T, DephaseTask>) return run_dephase(*s.model, p, s.seed);
          else return run_verify_task(p, s.seed, wall_clock);
        },
        s.params);
  });
}

RunOutcome run_verify(VerifyLevel level, std::uint64_t seed) {
  const std::string name = level == VerifyLevel::kFull ? "full" : "quick";
  const std::string digest = fnv1a_hex("verify:" + name);
  return assemble(digest, "verify", seed,
                  [&](json& wall_clock) { return run_verify_task(VerifyTask{level}, seed, wall_clock); });
}

void write_outcome(const RunOutcome& outcome, const std::filesystem::path& out_dir, const std::string& report_name,
                   const std::string& csv_name) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir / report_name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (out_dir / report_name).string());
    f << report_bytes(outcome.report);
  }
  if (outcome.csv) {
    std::ofstream f(out_dir / csv_name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (out_dir / csv_name).string());
    f << *outcome.csv;
  }
}

std::string report_bytes(const nlohmann::json& report) { return report.dump(2) + "\n"; }

nlohmann::json strip_wall_clock(nlohmann::json report) {
  report.erase("wall_clock");
  return report;
}

}  // namespace splitlab
