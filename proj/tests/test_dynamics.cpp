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

#include <sstream>

#include "oracles.hpp"
#include "splitlab/dynamics.hpp"
#include "splitlab/ids.hpp"
#include "splitlab/model.hpp"
#include "splitlab/random.hpp"

using namespace splitlab;

TEST_CASE("characteristic functions in closed form") {
  const auto g = NoiseDistribution::gaussian(0.3, 0.2);
  for (double a : {0.0, 1.0, 7.5})
    CHECK(std::abs(characteristic_function(g, a)) == doctest::Approx(oracle::gaussian_cf_abs(0.2, a)).epsilon(1e-12));
  const Complex phase = characteristic_function(g, 2.0) / std::abs(characteristic_function(g, 2.0));
  CHECK(std::abs(phase - std::polar(1.0, -0.6)) < 1e-12);

  const auto u = NoiseDistribution::uniform(-1.0, 1.0);
  CHECK(characteristic_function(u, 2.0).real() == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-12));
  CHECK(std::abs(characteristic_function(u, 0.0) - Complex(1.0)) < 1e-15);

  const auto d = NoiseDistribution::discrete({-1.0, 2.0}, {0.25, 0.75});
  const Complex expect = 0.25 * std::polar(1.0, 1.5) + 0.75 * std::polar(1.0, -3.0);
  CHECK(std::abs(characteristic_function(d, 1.5) - expect) < 1e-14);
  CHECK(std::abs(characteristic_function(NoiseDistribution::delta(0.0), 3.0) - Complex(1.0)) < 1e-15);

  CHECK_THROWS_AS(NoiseDistribution::gaussian(0.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(NoiseDistribution::discrete({1.0}, {0.5}), InvalidArgument);
  CHECK_THROWS_AS(NoiseDistribution::uniform(1.0, 1.0), InvalidArgument);
}

TEST_CASE("quadrature reproduces low moments") {
  for (const NoiseDistribution& dist :
       {NoiseDistribution::gaussian(0.5, 0.3), NoiseDistribution::uniform(-0.2, 0.7),
        NoiseDistribution::discrete({0.0, 1.0, 3.0}, {0.2, 0.3, 0.5})}) {
    const QuadratureRule q = quadrature(dist);
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      w += q.weights[k];
      m1 += q.weights[k] * q.nodes[k];
      m2 += q.weights[k] * q.nodes[k] * q.nodes[k];
    }
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m1 == doctest::Approx(dist.mean()).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(dist.second_moment()).epsilon(1e-12));
  }
}

TEST_CASE("finite-gap mixture over a discrete distribution matches exact propagation") {
  Rng rng(40);
  const LocalModel m = repetition_code_model(3);
  const Matrix h0 = m.hamiltonian();
  const Matrix v = random_hermitian_unit(8, rng);
  const Matrix rho0 = random_ket(m.system().dims(), rng).outer();
  const std::vector<double> values{-0.5, 0.1, 1.2};
  const std::vector<double> probs{0.3, 0.3, 0.4};
  const auto dist = NoiseDistribution::discrete(values, probs);
  for (double t : {0.0, 0.7, 3.0}) {
    const Matrix got = evolve_mixture(h0, 5.0, v, dist, rho0, t);
    CHECK((got - oracle::discrete_mixture(5.0 * h0, v, values, probs, rho0, t)).norm() < 1e-10);
  }
}

TEST_CASE("surrogate evolution dephases as predicted") {
  const LocalModel m = repetition_code_model(3);
  const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
  const std::vector<int> s0{0};
  const Matrix z1 = embed_operator(pauli('Z'), s0, m.system().dims());
  const DephasingProfile p = dephasing_profile(code, z1);
  const Vector psi = (p.lifted.col(0) + p.lifted.col(1)) / std::sqrt(2.0);
  const Matrix rho0 = psi * psi.adjoint();
  const auto dist = NoiseDistribution::gaussian(0.0, 0.1);
  for (double t : {0.0, 1.0, 4.0}) {
    const Matrix pred = predict_dephasing(code, z1, dist, rho0, t);
    CHECK(max_abs_deviation(evolve_surrogate(code, z1, dist, rho0, t), pred) < 1e-9);
    const Complex coherence = p.lifted.col(0).dot(pred * p.lifted.col(1));
    CHECK(std::abs(coherence) == doctest::Approx(0.5 * oracle::gaussian_cf_abs(0.1, 2.0 * t)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(predict_dephasing(code, z1, dist, Matrix::Identity(8, 8) / 8.0, 1.0), InvalidArgument);
}

TEST_CASE("coherence time inverts the characteristic function") {
  const auto g = NoiseDistribution::gaussian(0.0, 0.1);
  const CoherenceReport r = coherence_time(g, 2.0, 0.01);
  CHECK(r.c_eps == doctest::Approx(oracle::gaussian_coherence_c(0.1, 0.01)).epsilon(1e-9));
  CHECK(r.tau_eps == doctest::Approx(0.5 * r.c_eps).epsilon(1e-12));
  CHECK(std::abs(r.tau_eps - 0.7089) < 1e-3);
  CHECK(r.c_small == doctest::Approx(std::sqrt(2.0 * 0.01 / 0.01)).epsilon(1e-12));

  const auto d = NoiseDistribution::discrete({-1.0, 1.0}, {0.5, 0.5});
  const CoherenceReport rd = coherence_time(d, 1.0, 0.1);
  CHECK(std::abs(std::cos(rd.c_eps)) == doctest::Approx(0.9).epsilon(1e-9));

  const CoherenceReport never = coherence_time(NoiseDistribution::delta(0.3), 2.0, 0.01);
  CHECK_FALSE(never.finite());
  CHECK(std::isinf(never.tau_eps));
}

TEST_CASE("gap bound and fidelity bound hold on the repetition code") {
  Rng rng(41);
  const LocalModel m = repetition_code_model(3);
  const Matrix h0 = m.hamiltonian();
  const CodeSubspace code = ground_subspace(h0, m.system().dims());
  const Matrix v = random_hermitian_unit(8, rng, 0.5);
  const std::vector<double> ts{0.0, 0.5, 2.0, 8.0};
  for (const GapBoundRow& row : gap_bound_check(h0, code, v, 50.0, ts)) CHECK(row.pass);
  CHECK_THROWS_AS(gap_bound_check(h0 + Matrix::Identity(8, 8), code, v, 10.0, ts), InvalidArgument);

  const Ket psi = Ket::normalized(code.basis() * random_gaussian(2, 1, rng), code.dims());
  for (const FidelityRow& row : fidelity_bound_check(code, v, NoiseDistribution::uniform(-1.0, 1.0), psi, ts))
    CHECK(row.pass);
}

TEST_CASE("diagonal bath reduces to the mixture") {
  Rng rng(42);
  const LocalModel m = repetition_code_model(3);
  const Matrix v = random_hermitian_unit(8, rng);
  const Matrix rho0 = random_ket(m.system().dims(), rng).outer();
  const BathModel bath = thermal_bath({-1.0, 0.0, 2.0}, {0.0, 0.5, 1.3}, 0.7, v);
  double z = 0.0;
  for (double e : {0.0, 0.5, 1.3}) z += std::exp(-0.7 * e);
  CHECK(bath.state(0, 0).real() == doctest::Approx(1.0 / z).epsilon(1e-12));
  for (double t : {0.0, 1.0, 5.0}) CHECK(bath_embedding_check(m.hamiltonian(), bath, rho0, t) < 1e-10);

  BathModel bad = bath;
  bad.state(0, 1) = 0.1;
  bad.state(1, 0) = 0.1;
  CHECK_THROWS_AS(bath_embedding_check(m.hamiltonian(), bad, rho0, 1.0), UnsupportedInput);
}

TEST_CASE("time series CSV has a fixed header") {
  std::ostringstream os;
  write_time_series_csv(os, {{0.5, "0-1", 0.5, 0.49, 1e-3, 2e-3, 0.99, 0.98}});
  const std::string s = os.str();
  CHECK(s.rfind("t,pair,predicted,simulated,gap_lhs,gap_rhs,fidelity,fidelity_bound\n", 0) == 0);
  CHECK(s.find("0-1") != std::string::npos);
}
