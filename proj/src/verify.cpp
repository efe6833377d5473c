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

#include "splitlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "splitlab/decomposition.hpp"
#include "splitlab/dynamics.hpp"
#include "splitlab/ids.hpp"
#include "splitlab/model.hpp"
#include "splitlab/no_hiding.hpp"
#include "splitlab/random.hpp"

namespace splitlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scale {
  int duality_instances;
  int no_hiding_per_shape;
  int scan_per_shape;
  int two_site_instances;
  int random_chains;
  int gap_models;
};

Scale scale_for(VerifyLevel level) {
  if (level == VerifyLevel::kFull) return {500, 1000, 100, 200, 12, 5};
  return {100, 40, 8, 50, 4, 2};
}

CheckResult at_most(std::string name, std::string property, double measured, double bound, std::string detail = {}) {
  return {std::move(name), std::move(property), measured <= bound, measured, bound, "<=", std::move(detail), 0.0};
}

CheckResult at_least(std::string name, std::string property, double measured, double bound, std::string detail = {}) {
  return {std::move(name), std::move(property), measured >= bound, measured, bound, ">=", std::move(detail), 0.0};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return out;
}

// min over alpha of ||C - alpha I|| by a coarse grid and golden-section
// refinement on the bracketing cell; the norm is convex in alpha. C is
// Hermitian, so the norm is the largest eigenvalue magnitude.
double min_over_alpha(const Matrix& c, double radius) {
  const Eigen::Index d = c.rows();
  auto f = [&](double a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(c - a * Matrix::Identity(d, d), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  const int grid = 64;
  const double lo = -1.1 * radius - 1e-12;
  const double hi = 1.1 * radius + 1e-12;
  int best = 0;
  double best_val = kInf;
  for (int k = 0; k <= grid; ++k) {
    const double v = f(lo + (hi - lo) * k / grid);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / grid;
  double b = lo + (hi - lo) * std::min(best + 1, grid) / grid;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return std::min({best_val, f1, f2});
}

// Fidelity through the eigenvalues of sqrt(rho) sigma sqrt(rho), kept apart
// from the singular-value route used by the library.
double fidelity_by_eigenvalues(const Matrix& rho, const Matrix& sigma) {
  const Matrix s = psd_sqrt(rho);
  const EigenDecomposition e = herm_eig(hermitian_part(Matrix(s * sigma * s)));
  const double floor = 1e-12 * std::max(e.values.maxCoeff(), 0.0);
  double f = 0.0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    if (e.values(k) > floor) f += std::sqrt(e.values(k));
  return f;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_duality(const Scale& s, std::uint64_t seed) {
  Rng rng(seed + 101);
  double worst = 0.0;
  for (int k = 0; k < s.duality_instances; ++k) {
    const int d = random_int(2, 64, rng);
    const int rank = random_int(1, d - 1, rng);
    const CodeSubspace code = CodeSubspace::from_basis(random_isometry(d, rank, rng), Dims{d});
    const Matrix v = random_hermitian(d, rng);
    const IdsReport r = ids(code, v);
    const double oracle = 2.0 * min_over_alpha(project_onto_code(code, v), operator_norm(v));
    worst = std::max(worst, std::abs(oracle - r.delta_e));
  }
  return {at_most("ids_duality", "splitting equals twice the distance of PVP from multiples of P", worst, 1e-6)};
}

std::vector<CheckResult> check_stabilizer() {
  double worst_rep = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const LocalModel m = repetition_code_model(n);
    const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
    const std::vector<int> site{0};
    worst_rep = std::max(worst_rep, std::abs(ids_local(code, pauli('Z'), site).delta_e - 2.0));
  }
  const LocalModel f = four_two_two_model();
  const CodeSubspace code = ground_subspace(f.hamiltonian(), f.system().dims());
  double worst_kl = 0.0;
  for (int q = 0; q < 4; ++q)
    for (char p : {'X', 'Y', 'Z'}) {
      const std::vector<int> site{q};
      worst_kl = std::max(worst_kl, kl_check_local(code, pauli(p), site, 1e-10).deviation);
    }
  return {at_most("stabilizer_logical_splitting", "undetectable error splits the repetition code by 2", worst_rep,
                  1e-12, "max |dE(Z_1) - 2| over n = 3..8"),
          at_most("stabilizer_detected_errors", "[[4,2,2]] detects every single-qubit Pauli", worst_kl, 1e-10,
                  "max kl deviation over 12 Paulis")};
}

std::vector<CheckResult> check_no_hiding(const Scale& s, std::uint64_t seed) {
  Rng rng(seed + 303);
  double min_score = kInf;
  double worst_chain = -kInf;
  double worst_identity = 0.0;
  double max_scan = 0.0;
  double worst_dominance = -kInf;
  for (int da = 2; da <= 5; ++da)
    for (int db = 2; db <= 5; ++db) {
      const Dims dims{da, db};
      const std::vector<int> keep_b{1};
      for (int k = 0; k < s.no_hiding_per_shape; ++k) {
        const Matrix pair = random_isometry(da * db, 2, rng);
        const Ket b0 = Ket::normalized(pair.col(0), dims);
        const Ket b1 = Ket::normalized(pair.col(1), dims);
        const NoHidingWitness w = no_hiding_witness(b0, b1);
        min_score = std::min(min_score, w.score);
        worst_chain = std::max(worst_chain, std::max(2.0 * w.distance_d, w.fidelity_f) - w.score);

        const Matrix rho0 = reduced_state(b0.amplitudes(), dims, std::vector<int>{0});
        const Matrix rho1 = reduced_state(b1.amplitudes(), dims, std::vector<int>{0});
        const Matrix cross = partial_trace(b0.amplitudes() * b1.amplitudes().adjoint(), dims, keep_b);
        worst_identity = std::max(worst_identity, std::abs(fidelity_by_eigenvalues(rho0, rho1) - trace_norm(cross)));

        if (k < s.scan_per_shape) {
          const ScanResult scan = subspace_pair_score_scan(b0, b1, 9);
          max_scan = std::max(max_scan, scan.best_score);
          worst_dominance = std::max(worst_dominance, w.score - scan.best_score);
        }
      }
    }
  return {
      at_least("no_hiding_bound", "some analytic orthonormal pair scores at least 2/3", min_score, 2.0 / 3.0 - 1e-9),
      at_most("no_hiding_chain", "witness score dominates max{2D, F}", worst_chain, 1e-9),
      at_most("fidelity_purification_identity", "F(rho_0, rho_1) equals ||Tr_A |b0><b1| ||_1", worst_identity, 1e-9),
      at_most("no_hiding_scan_ceiling", "no orthonormal pair scores above 4", max_scan, 4.0 + 1e-9),
      at_most("no_hiding_scan_dominance", "grid scan is at least the analytic witness", worst_dominance, 1e-9),
  };
}

std::vector<CheckResult> check_two_site(const Scale& s, std::uint64_t seed) {
  Rng rng(seed + 404);
  double min_cert = kInf;
  double worst_gap = -kInf;
  for (int k = 0; k < s.two_site_instances; ++k) {
    const int da = random_int(2, 4, rng);
    const int db = random_int(2, 4, rng);
    const int rank = random_int(2, std::min(4, da * db - 1), rng);
    const Dims dims{da, db};
    const Projector p(random_projector(da * db, rank, rng), dims);
    const TwoSiteAttack a = two_site_attack(p);
    const CodeSubspace code = CodeSubspace::from_projector(p);
    const double measured = ids_local(code, a.report.x.matrix(), a.support).delta_e;
    min_cert = std::min(min_cert, std::min(a.report.certified_delta_e, measured));
    worst_gap = std::max(worst_gap, a.report.certified_delta_e - measured);
  }
  return {at_least("two_site_attack", "single-site reflection splits any rank >= 2 pair code by 1/3", min_cert,
                   1.0 / 3.0 - 1e-9),
          at_most("two_site_certificate", "certified value never exceeds the re-measured splitting", worst_gap, 1e-9)};
}

std::vector<LocalModel> commuting_corpus(const Scale& s, std::uint64_t seed) {
  std::vector<LocalModel> out;
  for (int n = 3; n <= 6; ++n) out.push_back(repetition_code_model(n));
  Rng rng(seed + 505);
  for (std::uint64_t k = 0; static_cast<int>(out.size()) < 4 + s.random_chains && k < 1000; ++k) {
    const int sites = random_int(3, 4, rng);
    Dims dims;
    for (int i = 0; i < sites; ++i) dims.push_back(random_int(2, 3, rng));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < sites; ++i) pairs.emplace_back(i, i + 1);
    LocalModel m = random_commuting_model(QuditSystem(dims), pairs, seed + 7919 * k, CouplingOptions{2});
    try {
      if (ground_subspace(m.hamiltonian(), m.system().dims()).degeneracy() >= 2) out.push_back(std::move(m));
    } catch (const NumericalError&) {
    }
  }
  out.push_back(random_subsystem_chain({3, 2, 2, 1}, seed + 11));
  out.push_back(random_subsystem_chain({3, 2, 3, 1}, seed + 12));
  out.push_back(random_subsystem_chain({4, 2, 2, 1}, seed + 13));
  out.push_back(random_subsystem_chain({3, 2, 1, 2}, seed + 14));
  return out;
}

std::vector<CheckResult> check_universal(const Scale& s, std::uint64_t seed) {
  double min_analytic = kInf;
  double min_multi = kInf;
  double worst_cert = -kInf;
  int multi = 0;
  int pair = 0;
  int mult = 0;
  for (const LocalModel& m : commuting_corpus(s, seed)) {
    UniversalAttackOptions o;
    o.restarts = 2;
    o.seed = seed;
    const UniversalAttackReport r = universal_attack(m, o);
    min_analytic = std::min(min_analytic, r.analytic.certified_delta_e);
    worst_cert = std::max(worst_cert, r.analytic.certified_delta_e - r.measured_delta_e);
    if (r.branch == AttackBranch::kMultiSector) {
      ++multi;
      min_multi = std::min(min_multi, r.analytic.certified_delta_e);
    } else if (r.branch == AttackBranch::kPairFactor) {
      ++pair;
    } else {
      ++mult;
    }
  }
  std::ostringstream detail;
  detail << "branches: multi_sector " << multi << ", pair_factor " << pair << ", multiplicity " << mult;
  return {at_least("universal_attack", "every degenerate commuting 2-local code has a 1/3 single-site splitting",
                   min_analytic, 1.0 / 3.0 - 1e-9, detail.str()),
          at_least("universal_attack_multi_sector", "multi-sector codes split by at least 1", min_multi, 1.0 - 1e-9),
          at_most("universal_attack_certificate", "certified value never exceeds the measured splitting", worst_cert,
                  1e-9)};
}

std::vector<CheckResult> check_gap_bound(const Scale& s, std::uint64_t seed) {
  Rng rng(seed + 606);
  const std::vector<double> gs{10.0, 100.0, 1000.0, 10000.0};
  const std::vector<double> ts = linspace(0.0, 10.0, 50);
  double worst_ratio_lo = kInf;
  double worst_ratio_hi = 0.0;
  double worst_excess = -kInf;
  for (int k = 0; k < s.gap_models; ++k) {
    const int d = random_int(2, 3, rng);
    const Dims dims{d, d};
    const Matrix h0 = Matrix::Identity(d * d, d * d) - random_projector(d * d, 2, rng);
    const CodeSubspace code = ground_subspace(h0, dims);
    const Matrix v = random_hermitian_unit(d * d, rng, 0.5);
    std::vector<double> peaks;
    for (double g : gs) {
      double peak = 0.0;
      for (const GapBoundRow& row : gap_bound_check(h0, code, v, g, ts)) {
        worst_excess = std::max(worst_excess, row.lhs - row.rhs);
        peak = std::max(peak, row.lhs);
      }
      peaks.push_back(peak);
    }
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
      const double ratio = peaks[i] / peaks[i + 1];
      worst_ratio_lo = std::min(worst_ratio_lo, ratio);
      worst_ratio_hi = std::max(worst_ratio_hi, ratio);
    }
  }
  std::ostringstream detail;
  detail << "decade ratios in [" << worst_ratio_lo << ", " << worst_ratio_hi << "]";
  CheckResult rate = at_least("gap_bound_rate", "deviation shrinks like 1/g", worst_ratio_lo, 5.0, detail.str());
  rate.passed = worst_ratio_lo >= 5.0 && worst_ratio_hi <= 20.0;
  return {at_most("gap_bound", "finite-gap evolution stays within 4||V||(||V||t+1)/(g E_gap)", worst_excess, 0.0),
          rate};
}

std::vector<CheckResult> check_dephasing() {
  const LocalModel m = repetition_code_model(3);
  const Matrix h0 = m.hamiltonian();
  const CodeSubspace code = ground_subspace(h0, m.system().dims());
  const NoiseDistribution dist = NoiseDistribution::gaussian(0.0, 0.1);
  const std::vector<int> site{0};
  const Matrix z1 = embed_operator(pauli('Z'), site, m.system().dims());
  const Matrix v2 = z1 + 0.5 * embed_operator(pauli('X'), site, m.system().dims());

  auto plus_state = [&](const Matrix& v) {
    const DephasingProfile p = dephasing_profile(code, v);
    const Vector psi = (p.lifted.col(0) + p.lifted.col(p.lifted.cols() - 1)) / std::sqrt(2.0);
    return Matrix(psi * psi.adjoint());
  };

  double finite = 0.0;
  double surrogate = 0.0;
  for (const Matrix& v : {z1, v2}) {
    const Matrix rho0 = plus_state(v);
    for (double t : linspace(0.0, 5.0, 21)) {
      const Matrix predicted = predict_dephasing(code, v, dist, rho0, t);
      finite = std::max(finite, max_abs_deviation(evolve_mixture(h0, 1000.0, v, dist, rho0, t), predicted));
      surrogate = std::max(surrogate, max_abs_deviation(evolve_surrogate(code, v, dist, rho0, t), predicted));
    }
  }

  double worst_increase = -kInf;
  {
    const Matrix rho0 = plus_state(v2);
    double previous = kInf;
    for (double g : {10.0, 100.0, 1000.0}) {
      double dev = 0.0;
      for (double t : linspace(0.0, 5.0, 11))
        dev = std::max(dev, max_abs_deviation(evolve_mixture(h0, g, v2, dist, rho0, t),
                                              predict_dephasing(code, v2, dist, rho0, t)));
      worst_increase = std::max(worst_increase, dev - previous);
      previous = dev;
    }
  }

  return {at_most("dephasing_finite_gap", "g = 1000 mixture matches the infinite-gap dephasing", finite, 5e-2),
          at_most("dephasing_surrogate", "P V P mixture matches the characteristic-function prediction", surrogate,
                  1e-9),
          at_most("dephasing_convergence", "deviation decreases as g grows", worst_increase, 0.0)};
}

std::vector<CheckResult> check_coherence() {
  const NoiseDistribution dist = NoiseDistribution::gaussian(0.0, 0.1);
  const CoherenceReport r = coherence_time(dist, 2.0, 0.01);
  const double oracle = std::sqrt(2.0 * std::abs(std::log(0.99))) / 0.1 / 2.0;
  const CoherenceReport doubled = coherence_time(dist, 4.0, 0.01);
  const CoherenceReport small = coherence_time(dist, 2.0, 1e-4);
  std::ostringstream detail;
  detail << "tau = " << r.tau_eps << ", c = " << r.c_eps;
  return {at_most("coherence_time", "tau matches the inverted Gaussian characteristic function",
                  std::abs(r.tau_eps - oracle), 1e-3, detail.str()),
          at_most("coherence_time_reference_value", "tau close to 0.7089", std::abs(r.tau_eps - 0.7089), 1e-3),
          at_most("coherence_time_scaling", "doubling the splitting halves tau",
                  std::abs(doubled.tau_eps - 0.5 * r.tau_eps), 1e-9),
          at_most("coherence_time_small_eps", "sqrt(2 eps / var) within 1% at eps = 1e-4",
                  std::abs(small.c_small - small.c_eps) / small.c_eps, 0.01)};
}

std::vector<CheckResult> check_fidelity(std::uint64_t seed) {
  struct Case {
    LocalModel model;
    Matrix v;
    NoiseDistribution dist;
  };
  Rng rng(seed + 909);
  std::vector<Case> cases;
  {
    LocalModel m = repetition_code_model(3);
    Matrix v = embed_operator(pauli('Z'), std::vector<int>{0}, m.system().dims());
    cases.push_back({std::move(m), std::move(v), NoiseDistribution::gaussian(0.0, 0.1)});
  }
  {
    LocalModel m = four_two_two_model();
    Matrix v = embed_operator(kron(pauli('X'), pauli('X')), std::vector<int>{0, 1}, m.system().dims());
    cases.push_back({std::move(m), std::move(v), NoiseDistribution::uniform(-0.2, 0.3)});
  }
  {
    LocalModel m = random_subsystem_chain({3, 2, 2, 1}, seed + 21);
    const int d = m.system().site_dim(1);
    Matrix v = embed_operator(random_hermitian_unit(d, rng), std::vector<int>{1}, m.system().dims());
    cases.push_back({std::move(m), std::move(v), NoiseDistribution::discrete({-1.0, 0.5, 2.0}, {0.2, 0.5, 0.3})});
  }
  double worst = -kInf;
  const std::vector<double> ts = linspace(0.0, 10.0, 25);
  for (const Case& c : cases) {
    const CodeSubspace code = ground_subspace(c.model.hamiltonian(), c.model.system().dims());
    const DephasingProfile p = dephasing_profile(code, c.v);
    const Ket worst_state =
        Ket::normalized((p.lifted.col(0) + p.lifted.col(p.lifted.cols() - 1)) / std::sqrt(2.0), code.dims());
    const Ket random_state = Ket::normalized(code.basis() * random_gaussian(code.degeneracy(), 1, rng), code.dims());
    for (const Ket& psi : {worst_state, random_state})
      for (const FidelityRow& row : fidelity_bound_check(code, c.v, c.dist, psi, ts))
        worst = std::max(worst, row.bound - row.fidelity);
  }
  return {at_most("fidelity_bound", "F >= 1 - t^2 <lambda^2> dE^2 / 8 in the infinite-gap limit", worst, 1e-12)};
}

std::vector<CheckResult> check_bath(std::uint64_t seed) {
  Rng rng(seed + 1010);
  const LocalModel m = repetition_code_model(3);
  const Matrix hs = m.hamiltonian();
  const int d = static_cast<int>(hs.rows());
  const Matrix v = random_hermitian_unit(d, rng);
  const Matrix rho0 = random_ket(m.system().dims(), rng).outer();
  const std::vector<BathModel> baths{
      thermal_bath({-1.0, 1.0}, {0.0, 1.0}, 1.0, v),
      thermal_bath({-1.0, 0.0, 2.0}, {0.0, 0.5, 1.3}, 0.7, v),
  };
  double worst = 0.0;
  for (const BathModel& b : baths)
    for (double t : linspace(0.0, 5.0, 20)) worst = std::max(worst, bath_embedding_check(hs, b, rho0, t));
  return {at_most("bath_embedding", "diagonal bath reduces to the random unitary mixture", worst, 1e-10)};
}

LocalModel disconnected_pairs(std::uint64_t seed, int rank) {
  Rng rng(seed);
  std::vector<LocalTerm> terms;
  for (int i : {0, 2}) terms.push_back({{i, i + 1}, Matrix::Identity(4, 4) - random_projector(4, rank, rng)});
  return build_two_local_model(QuditSystem(Dims{2, 2, 2, 2}), std::move(terms));
}

std::vector<CheckResult> check_factorization(std::uint64_t seed) {
  std::vector<LocalModel> fixtures;
  fixtures.push_back(disconnected_pairs(seed + 31, 1));
  fixtures.push_back(disconnected_pairs(seed + 32, 2));
  fixtures.push_back(random_subsystem_chain({3, 2, 2, 1}, seed + 33));
  fixtures.push_back(random_subsystem_chain({3, 2, 3, 1}, seed + 34));
  fixtures.push_back(random_subsystem_chain({4, 2, 2, 1}, seed + 35));
  fixtures.push_back(random_subsystem_chain({3, 2, 2, 2}, seed + 36));
  fixtures.push_back(random_subsystem_chain({3, 3, 4, 1}, seed + 37));
  for (std::uint64_t k = 0; k < 4; ++k)
    fixtures.push_back(random_commuting_model(QuditSystem(Dims{2, 3, 2}), {{0, 1}, {1, 2}}, seed + 40 + k));

  double worst = 0.0;
  int factored = 0;
  for (const LocalModel& m : fixtures) {
    const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
    std::vector<SiteSectorDecomposition> decomps;
    bool single = true;
    for (int i = 0; i < m.system().size(); ++i) {
      decomps.push_back(sector_projectors(m, i, seed + i));
      single = single && !detect_multi_sector(code, decomps.back()).multi_sector();
    }
    if (!single) continue;
    const GroundFactorization f = factor_ground_projector_unchecked(m, code, decomps, seed);
    worst = std::max({worst, f.reconstruction_error, f.support_residual, f.units_residual});
    ++factored;
  }
  std::ostringstream detail;
  detail << factored << " single-sector fixtures factored";
  return {at_most("factorization_roundtrip", "code projector is the product of pair projectors", worst, 1e-6,
                  detail.str())};
}

std::vector<CheckResult> check_ascent(std::uint64_t seed) {
  double worst_drop = 0.0;
  const LocalModel m = random_subsystem_chain({3, 2, 2, 1}, seed + 51);
  const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
  for (int site = 0; site < m.system().size(); ++site) {
    AscentOptions o;
    o.seed = seed + site;
    const AttackReport r = worst_single_site_ascent(code, site, o);
    for (std::size_t k = 1; k < r.history.size(); ++k)
      worst_drop = std::max(worst_drop, r.history[k - 1] - r.history[k]);
  }
  return {at_most("ascent_monotone", "alternating ascent never lowers the splitting", worst_drop, 1e-12)};
}

}  // namespace

std::vector<CheckResult> run_verify_suite(VerifyLevel level, std::uint64_t seed) {
  const Scale s = scale_for(level);
  const std::vector<std::function<std::vector<CheckResult>()>> groups{
      [&] { return check_duality(s, seed); },
      [&] { return check_stabilizer(); },
      [&] { return check_no_hiding(s, seed); },
      [&] { return check_two_site(s, seed); },
      [&] { return check_universal(s, seed); },
      [&] { return check_gap_bound(s, seed); },
      [&] { return check_dephasing(); },
      [&] { return check_coherence(); },
      [&] { return check_fidelity(seed); },
      [&] { return check_bath(seed); },
      [&] { return check_factorization(seed); },
      [&] { return check_ascent(seed); },
  };
  std::vector<CheckResult> out;
  for (const auto& g : groups) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> part;
    try {
      part = g();
    } catch (const std::exception& e) {
      part = {{"group_error", "check group ran to completion", false, kInf, 0.0, "<=", e.what(), 0.0}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (CheckResult& c : part) {
      c.seconds = secs;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<std::string> verify_check_names() {
  return {"ids_duality",
          "stabilizer_logical_splitting",
          "stabilizer_detected_errors",
          "no_hiding_bound",
          "no_hiding_chain",
          "fidelity_purification_identity",
          "no_hiding_scan_ceiling",
          "no_hiding_scan_dominance",
          "two_site_attack",
          "two_site_certificate",
          "universal_attack",
          "universal_attack_multi_sector",
          "universal_attack_certificate",
          "gap_bound",
          "gap_bound_rate",
          "dephasing_finite_gap",
          "dephasing_surrogate",
          "dephasing_convergence",
          "coherence_time",
          "coherence_time_reference_value",
          "coherence_time_scaling",
          "coherence_time_small_eps",
          "fidelity_bound",
          "bath_embedding",
          "factorization_roundtrip",
          "ascent_monotone"};
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"property", c.property},
          {"passed", c.passed},
          {"measured", json_number(c.measured)},
          {"bound", json_number(c.bound)},
          {"relation", c.relation},
          {"detail", c.detail}};
}

}  // namespace splitlab
