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

#include "oracles.hpp"
#include "splitlab/decomposition.hpp"
#include "splitlab/model.hpp"
#include "splitlab/random.hpp"

using namespace splitlab;

TEST_CASE("operator Schmidt terms rebuild the operator") {
  Rng rng(30);
  const Matrix h = random_hermitian(6, rng);
  const std::vector<SchmidtTerm> terms = operator_schmidt(h, 2, 3);
  Matrix sum = Matrix::Zero(6, 6);
  for (const SchmidtTerm& t : terms) sum += t.weight * oracle::kron(t.left, t.right);
  CHECK((sum - h).norm() < 1e-10);
  CHECK(terms.size() <= 4);
  CHECK(operator_schmidt(oracle::pauli_string("ZZ"), 2, 2).size() == 1);
}

TEST_CASE("generated algebras have the expected dimension") {
  CHECK(generate_algebra({oracle::pauli('Z')}, 2).dim() == 2);
  CHECK(generate_algebra({oracle::pauli('X'), oracle::pauli('Z')}, 2).dim() == 4);
  const Matrix zi = oracle::kron(oracle::pauli('Z'), Matrix::Identity(2, 2));
  const Matrix xi = oracle::kron(oracle::pauli('X'), Matrix::Identity(2, 2));
  const OperatorAlgebra a = generate_algebra({zi, xi}, 4);
  CHECK(a.dim() == 4);
  CHECK(algebra_center(a).dim() == 1);
  const OperatorAlgebra diag = generate_algebra({oracle::kron(oracle::pauli('Z'), oracle::pauli('Z')), zi}, 4);
  CHECK(diag.dim() == 4);
  CHECK(algebra_center(diag).dim() == 4);
}

TEST_CASE("repetition code populates two sectors at every site") {
  const LocalModel m = repetition_code_model(4);
  const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
  for (int i = 0; i < 4; ++i) {
    const SiteSectorDecomposition d = sector_projectors(m, i, 0);
    CHECK(d.projectors.size() == 2);
    CHECK(d.block_certificate < 1e-12);
    CHECK(detect_multi_sector(code, d).multi_sector());
  }
  const AttackReport a = multi_sector_attack(code, sector_projectors(m, 0, 0));
  CHECK(a.certified_delta_e == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("universal attack takes each branch") {
  UniversalAttackOptions o;
  o.restarts = 1;

  const UniversalAttackReport rep = universal_attack(repetition_code_model(3), o);
  CHECK(rep.branch == AttackBranch::kMultiSector);
  CHECK(rep.analytic.certified_delta_e >= 1.0 - 1e-9);
  CHECK(rep.refined.certified_delta_e == doctest::Approx(2.0).epsilon(1e-9));

  const LocalModel chain = random_subsystem_chain({3, 2, 2, 1}, 31);
  const UniversalAttackReport pr = universal_attack(chain, o);
  CHECK(pr.branch == AttackBranch::kPairFactor);
  CHECK(pr.analytic.certified_delta_e >= 1.0 / 3.0 - 1e-9);
  CHECK(pr.measured_delta_e >= pr.analytic.certified_delta_e - 1e-9);
  CHECK(pr.refined.certified_delta_e >= pr.measured_delta_e - 1e-9);
  REQUIRE(pr.factorization.has_value());
  CHECK(pr.factorization->reconstruction_error < 1e-6);

  const LocalModel mult = random_subsystem_chain({3, 2, 1, 2}, 32);
  const UniversalAttackReport mr = universal_attack(mult, o);
  CHECK(mr.branch == AttackBranch::kMultiplicity);
  CHECK(mr.analytic.certified_delta_e == doctest::Approx(2.0).epsilon(1e-9));

  const nlohmann::json j = to_json(pr);
  CHECK(j.at("branch") == "pair_factor");
  CHECK(j.at("factorization").at("pairs").size() == 2);
}

TEST_CASE("factorization of disconnected pairs rebuilds the projector") {
  Rng rng(33);
  std::vector<LocalTerm> terms;
  for (int i : {0, 2}) terms.push_back({{i, i + 1}, Matrix::Identity(4, 4) - random_projector(4, 2, rng)});
  const LocalModel m = build_two_local_model(QuditSystem(Dims{2, 2, 2, 2}), std::move(terms));
  const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
  const GroundFactorization f = factor_ground_projector(m, code, 0);
  CHECK(f.pairs.size() == 2);
  for (const PairFactor& p : f.pairs) CHECK(p.rank == 2);
  CHECK(f.reconstruction_error < 1e-8);
  CHECK(f.support_residual < 1e-8);
}

TEST_CASE("decomposition rejects unsupported models") {
  const QuditSystem sys(Dims{2, 2, 2});
  const LocalModel nc =
      build_two_local_model(sys, {{{0, 1}, oracle::pauli_string("XX")}, {{1, 2}, oracle::pauli_string("ZZ")}});
  CHECK_THROWS_AS(universal_attack(nc), UnsupportedInput);
  CHECK_THROWS_AS(universal_attack(four_two_two_model()), UnsupportedInput);
  const LocalModel rep = repetition_code_model(3);
  CHECK_THROWS_AS(factor_ground_projector(rep, ground_subspace(rep.hamiltonian(), rep.system().dims())),
                  UnsupportedInput);
}
