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

// Evolution under g H0 + lambda V with a random strength lambda ~ p.
//
// With an infinite gap the code only sees P V P, and a code state dephases
// in its eigenbasis: rho_mn(t) = p~(t (mu_m - mu_n)) rho_mn(0), where
// p~(a) = E[exp(-i lambda a)]. Finite gaps are handled exactly and compared
// against that limit.

#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "splitlab/code_subspace.hpp"
#include "splitlab/noise.hpp"

namespace splitlab {

/// E[exp(-i lambda alpha)] in closed form.
Complex characteristic_function(const NoiseDistribution& dist, double alpha);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1
};

/// Gauss-Hermite nodes for Gaussian, Gauss-Legendre for uniform, the exact
/// support for discrete and delta distributions.
QuadratureRule quadrature(const NoiseDistribution& dist, int nodes = 64);

/// Equal-weight samples, for stress tests.
QuadratureRule monte_carlo(const NoiseDistribution& dist, int samples, std::uint64_t seed);

struct DephasingProfile {
  RealVector mu;       // eigenvalues of the compressed V, ascending
  Matrix eigenbasis;   // d x d, columns in code coordinates
  Matrix lifted;       // D x d, eigenbasis lifted to the full space

  /// p~(t (mu_m - mu_n)) for every pair.
  Matrix factors(const NoiseDistribution& dist, double t) const;
};

DephasingProfile dephasing_profile(const CodeSubspace& code, const Matrix& v);

/// Infinite-gap prediction. rho0 must lie in the code within 1e-10.
Matrix predict_dephasing(const CodeSubspace& code, const Matrix& v, const NoiseDistribution& dist,
                         const Matrix& rho0, double t);

/// sum_k w_k exp(-i t H_k) rho0 exp(i t H_k).
Matrix evolve_ensemble(const std::vector<Matrix>& generators, const std::vector<double>& weights,
                       const Matrix& rho0, double t);

struct MixtureOptions {
  int nodes = 64;
  int samples = 0;  // > 0 switches continuous distributions to Monte Carlo
  std::uint64_t seed = 0;
};

/// Mixture over lambda of exp(-i t (g H0 + lambda V)) rho0 exp(+...).
Matrix evolve_mixture(const Matrix& h0, double g, const Matrix& v, const NoiseDistribution& dist,
                      const Matrix& rho0, double t, const MixtureOptions& options = {});

/// The infinite-gap limit: the same mixture with generator P V P.
Matrix evolve_surrogate(const CodeSubspace& code, const Matrix& v, const NoiseDistribution& dist,
                        const Matrix& rho0, double t, const MixtureOptions& options = {});

struct GapBoundRow {
  double t;
  double lhs;  // ||exp(-it(gH0 + V)) P - exp(-it PVP) P||
  double rhs;  // 4 ||V|| / (g E_gap) (||V|| |t| + 1)
  bool pass;
};

/// Checks the finite-gap deviation bound on a time grid. `code` must be the
/// ground space of h0 with ground energy 0 (InvalidArgument otherwise).
std::vector<GapBoundRow> gap_bound_check(const Matrix& h0, const CodeSubspace& code, const Matrix& v, double g,
                                         const std::vector<double>& t_grid);

struct FidelityRow {
  double t;
  double fidelity;  // sqrt(<psi|rho(t)|psi>)
  double bound;     // 1 - t^2 <lambda^2> dE^2 / 8
  bool pass;
};

/// Surrogate evolution of a pure code state against the fidelity lower bound.
std::vector<FidelityRow> fidelity_bound_check(const CodeSubspace& code, const Matrix& v, const NoiseDistribution& dist,
                                              const Ket& psi, const std::vector<double>& t_grid,
                                              const MixtureOptions& options = {});

struct CoherenceReport {
  double epsilon = 0.0;
  double delta_e = 0.0;
  double c_eps = std::numeric_limits<double>::infinity();
  double tau_eps = std::numeric_limits<double>::infinity();
  double c_small = std::numeric_limits<double>::infinity();  // sqrt(2 eps / var)
  double tau_small = std::numeric_limits<double>::infinity();
  bool finite() const { return std::isfinite(c_eps); }
};

/// First alpha with |p~(alpha)| = 1 - epsilon, located by a growing scan and
/// bisection; tau = c / delta_e. Infinite when |p~| never drops that far.
CoherenceReport coherence_time(const NoiseDistribution& dist, double delta_e, double epsilon);

struct BathModel {
  std::vector<double> energies;       // diagonal bath Hamiltonian
  Matrix state;                       // bath density matrix, must be diagonal
  std::vector<Matrix> interactions;   // V_k on the system, one per bath level
};

/// Bath levels lambda_k with H_B = diag(energies), thermal populations
/// exp(-beta E_k) / Z, and V_k = lambda_k V.
BathModel thermal_bath(const std::vector<double>& lambdas, const std::vector<double>& energies, double beta,
                       const Matrix& v);

/// max |entry| of Tr_B exp(-itH)(rho0 (x) rho_B)exp(itH) minus the mixture
/// sum_k p_k exp(-it(H_S + V_k)) rho0 exp(...), for
/// H = H_S (x) I + I (x) H_B + sum_k V_k (x) |k><k|.
/// Throws UnsupportedInput when the bath state is not diagonal.
double bath_embedding_check(const Matrix& h_s, const BathModel& bath, const Matrix& rho0, double t);

/// Largest |entry| of a - b.
double max_abs_deviation(const Matrix& a, const Matrix& b);

struct TimeSeriesRow {
  double t;
  std::string pair;  // "m-n" in the compressed-V eigenbasis
  double predicted;
  double simulated;
  double gap_lhs;
  double gap_rhs;
  double fidelity;
  double fidelity_bound;
};

/// Column order: t,pair,predicted,simulated,gap_lhs,gap_rhs,fidelity,fidelity_bound.
void write_time_series_csv(std::ostream& os, const std::vector<TimeSeriesRow>& rows);

}  // namespace splitlab
