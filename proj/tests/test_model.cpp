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
#include "splitlab/code_subspace.hpp"
#include "splitlab/model.hpp"
#include "splitlab/random.hpp"

using namespace splitlab;

namespace {

Eigen::VectorXd spectrum(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("stabilizer Hamiltonian is the sum of (I - g) / 2") {
  const LocalModel m = stabilizer_hamiltonian(3, {"ZZI", "IZZ"});
  const oracle::M expected = 0.5 * (oracle::M::Identity(8, 8) - oracle::pauli_string("ZZI")) +
                             0.5 * (oracle::M::Identity(8, 8) - oracle::pauli_string("IZZ"));
  CHECK((m.hamiltonian() - expected).norm() < 1e-12);
  CHECK(m.commuting());
  CHECK(m.is_two_local());

  const LocalModel signed_gen = stabilizer_hamiltonian(2, {"-XX"});
  CHECK((signed_gen.hamiltonian() - 0.5 * (oracle::M::Identity(4, 4) + oracle::pauli_string("XX"))).norm() < 1e-12);
}

TEST_CASE("repetition and [[4,2,2]] fixtures have the expected ground spaces") {
  for (int n = 3; n <= 6; ++n) {
    const LocalModel m = repetition_code_model(n);
    const CodeSubspace c = ground_subspace(m.hamiltonian(), m.system().dims());
    CHECK(c.degeneracy() == 2);
    CHECK(c.ground_energy() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.gap() == doctest::Approx(1.0).epsilon(1e-10));
  }
  const LocalModel f = four_two_two_model();
  CHECK(f.locality() == 4);
  CHECK_FALSE(f.is_two_local());
  const CodeSubspace c = ground_subspace(f.hamiltonian(), f.system().dims());
  CHECK(c.degeneracy() == 4);
  CHECK(c.gap() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("random commuting model commutes and is reproducible") {
  const QuditSystem sys(Dims{2, 3, 2});
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 2}};
  const LocalModel a = random_commuting_model(sys, pairs, 17);
  const LocalModel b = random_commuting_model(sys, pairs, 17);
  const LocalModel c = random_commuting_model(sys, pairs, 18);
  CHECK(a.commuting());
  CHECK(a.commutator_certificate() < 1e-9);
  CHECK((a.hamiltonian() - b.hamiltonian()).norm() == 0.0);
  CHECK((a.hamiltonian() - c.hamiltonian()).norm() > 1e-3);
  CHECK(spectrum(a.hamiltonian())(0) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("block_sites keeps the spectrum") {
  const LocalModel m = random_commuting_model(QuditSystem(Dims{2, 2, 2, 2}), {{0, 1}, {1, 2}, {2, 3}}, 5);
  const LocalModel blocked = block_sites(m, {{0, 1}, {2, 3}});
  CHECK(blocked.system().dims() == Dims{4, 4});
  CHECK(blocked.is_two_local());
  CHECK((spectrum(m.hamiltonian()) - spectrum(blocked.hamiltonian())).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(block_sites(m, {{0}, {2, 3}}), InvalidArgument);
}

TEST_CASE("model builder rejects malformed terms") {
  const QuditSystem sys(Dims{2, 2});
  Matrix non_herm = Matrix::Zero(4, 4);
  non_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(build_local_model(sys, {{{0, 1}, non_herm}}), InvalidArgument);
  CHECK_THROWS_AS(build_local_model(sys, {{{0, 1}, Matrix::Identity(4, 4)}, {{1, 0}, Matrix::Identity(4, 4)}}),
                  InvalidArgument);
  CHECK_THROWS_AS(build_local_model(sys, {{{0, 2}, Matrix::Identity(4, 4)}}), InvalidArgument);
  CHECK_THROWS_AS(build_local_model(sys, {{{0}, Matrix::Identity(3, 3)}}), InvalidArgument);
  CHECK_THROWS_AS(QuditSystem(Dims{2, 1}), InvalidArgument);
}

TEST_CASE("non-commuting terms are flagged") {
  const QuditSystem sys(Dims{2, 2, 2});
  const LocalModel m = build_two_local_model(sys, {{{0, 1}, oracle::pauli_string("XX")}, {{1, 2}, oracle::pauli_string("ZZ")}});
  CHECK_FALSE(m.commuting());
  CHECK(m.commutator_certificate() > 1.0);
}

TEST_CASE("subsystem chain has product-of-pairs degeneracy") {
  SubsystemChainOptions o;
  o.sites = 3;
  o.virtual_dim = 2;
  o.pair_rank = 2;
  o.multiplicity = 1;
  const LocalModel m = random_subsystem_chain(o, 3);
  CHECK(m.commuting());
  CHECK(ground_subspace(m.hamiltonian(), m.system().dims()).degeneracy() == 4);

  o.pair_rank = 1;
  o.multiplicity = 2;
  const LocalModel w = random_subsystem_chain(o, 4);
  CHECK(ground_subspace(w.hamiltonian(), w.system().dims()).degeneracy() == 8);
}

TEST_CASE("embed and support_dims") {
  const QuditSystem sys(Dims{2, 3, 2});
  const std::vector<int> support{2, 0};
  CHECK(support_dims(sys, support) == Dims{2, 2});
  const HermOp zx(oracle::pauli_string("ZX"), Dims{2, 2});
  const HermOp e = embed(zx, support, sys);
  const oracle::M expected = oracle::kron(oracle::kron(oracle::pauli('X'), oracle::M::Identity(3, 3)), oracle::pauli('Z'));
  CHECK((e.matrix() - expected).norm() < 1e-12);
}
