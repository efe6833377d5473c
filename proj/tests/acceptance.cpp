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

// Acceptance battery at full scale. Prints one PASS/FAIL line per criterion
// and exits non-zero if any criterion fails. Reference values come from
// tests/oracles.hpp, never from the library routine being judged.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "splitlab/decomposition.hpp"
#include "splitlab/dynamics.hpp"
#include "splitlab/ids.hpp"
#include "splitlab/model.hpp"
#include "splitlab/no_hiding.hpp"
#include "splitlab/random.hpp"

using namespace splitlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool passed = true;
  std::string summary;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = a + (b - a) * k / (n - 1);
  return out;
}

// ---------------------------------------------------------------------------

Outcome check_ids_duality() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(2, 64);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int d = dim(rng);
    const int rank = std::uniform_int_distribution<int>(1, d - 1)(rng);
    const Matrix basis = oracle::random_isometry(d, rank, rng);
    const Matrix v = oracle::random_hermitian(d, rng);
    const double got = ids(CodeSubspace::from_basis(basis, Dims{d}), v).delta_e;
    worst = std::max(worst, std::abs(got - 2.0 * oracle::min_alpha_distance(basis.adjoint() * v * basis)));
  }
  return {worst <= 1e-6, fmt("max |dE - 2 min_a ||PVP - aP||| = %.3e <= 1e-6 over 500 instances", worst)};
}

Outcome check_stabilizer() {
  double worst_rep = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const LocalModel m = repetition_code_model(n);
    const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
    const std::vector<int> site{0};
    const double got = ids_local(code, pauli('Z'), site).delta_e;
    const int dim = 1 << n;
    Matrix basis = Matrix::Zero(dim, 2);
    basis(0, 0) = 1.0;
    basis(dim - 1, 1) = 1.0;
    const double ref = oracle::splitting(basis, oracle::embed_single(oracle::pauli('Z'), 0, Dims(n, 2)));
    worst_rep = std::max({worst_rep, std::abs(got - 2.0), std::abs(ref - 2.0)});
  }
  const LocalModel f = four_two_two_model();
  const CodeSubspace code = ground_subspace(f.hamiltonian(), f.system().dims());
  const Matrix h = 0.5 * (Matrix::Identity(16, 16) - oracle::pauli_string("XXXX")) +
                   0.5 * (Matrix::Identity(16, 16) - oracle::pauli_string("ZZZZ"));
  const Matrix ref_basis = oracle::kernel(h);
  double worst_kl = 0.0;
  for (int q = 0; q < 4; ++q)
    for (char p : {'X', 'Y', 'Z'}) {
      const std::vector<int> site{q};
      worst_kl = std::max(worst_kl, kl_check_local(code, pauli(p), site, 1e-10).deviation);
      worst_kl = std::max(worst_kl, 0.5 * oracle::splitting(ref_basis, oracle::embed_single(oracle::pauli(p), q, Dims(4, 2))));
    }
  return {worst_rep <= 1e-12 && worst_kl <= 1e-10,
          fmt("repetition max |dE - 2| = %.3e <= 1e-12; [[4,2,2]] max kl deviation = %.3e <= 1e-10", worst_rep,
              worst_kl)};
}

Outcome check_no_hiding() {
  Rng rng(1003);
  double min_score = kInf;
  double max_scan = 0.0;
  double worst_score_error = 0.0;
  double worst_dominance = -kInf;
  for (int da = 2; da <= 5; ++da)
    for (int db = 2; db <= 5; ++db) {
      const Dims dims{da, db};
      for (int k = 0; k < 1000; ++k) {
        const Matrix pair = random_isometry(da * db, 2, rng);
        const Ket b0 = Ket::normalized(pair.col(0), dims);
        const Ket b1 = Ket::normalized(pair.col(1), dims);
        const NoHidingWitness w = no_hiding_witness(b0, b1);
        min_score = std::min(min_score, w.score);
        worst_score_error = std::max(
            worst_score_error, std::abs(w.score - oracle::pair_score(w.psi.amplitudes(), w.phi.amplitudes(), da, db)));
        if (k % 10 != 0) continue;
        // Independent scan over psi = cos(t/2) b0 + e^{ip} sin(t/2) b1.
        double scan = 0.0;
        for (int i = 0; i <= 8; ++i)
          for (int j = 0; j <= 8; ++j) {
            const double t = std::numbers::pi * i / 8.0;
            const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * j / 8.0);
            const Vector psi = std::cos(t / 2) * pair.col(0) + e * std::sin(t / 2) * pair.col(1);
            const Vector phi = -std::conj(e) * std::sin(t / 2) * pair.col(0) + std::cos(t / 2) * pair.col(1);
            scan = std::max(scan, oracle::pair_score(psi, phi, da, db));
          }
        max_scan = std::max(max_scan, scan);
        worst_dominance = std::max(worst_dominance, w.score - scan);
      }
    }
  const bool ok = min_score >= 2.0 / 3.0 - 1e-9 && max_scan <= 4.0 && worst_score_error <= 1e-9 &&
                  worst_dominance <= 1e-9;
  return {ok, fmt("min witness score = %.4f >= 2/3 - 1e-9 over 16000 subspaces; max scan = %.4f <= 4; "
                  "witness - scan <= %.1e; score vs oracle %.1e",
                  min_score, max_scan, worst_dominance, worst_score_error)};
}

Outcome check_two_site() {
  Rng rng(1004);
  double min_cert = kInf;
  double worst_gap = -kInf;
  for (int k = 0; k < 200; ++k) {
    const int da = random_int(2, 4, rng);
    const int db = random_int(2, 4, rng);
    const int rank = random_int(2, 4, rng);
    const Dims dims{da, db};
    const Projector p(random_projector(da * db, rank, rng), dims);
    const TwoSiteAttack a = two_site_attack(p);
    const Matrix basis = oracle::kernel(Matrix::Identity(da * db, da * db) - p.matrix());
    const Matrix x = a.side == Side::kA ? oracle::kron(a.report.x.matrix(), Matrix::Identity(db, db))
                                        : oracle::kron(Matrix::Identity(da, da), a.report.x.matrix());
    const double measured = oracle::splitting(basis, x);
    const double library = ids_local(CodeSubspace::from_projector(p), a.report.x.matrix(), a.support).delta_e;
    min_cert = std::min(min_cert, a.report.certified_delta_e);
    worst_gap = std::max({worst_gap, a.report.certified_delta_e - measured, std::abs(library - measured)});
  }
  return {min_cert >= 1.0 / 3.0 - 1e-9 && worst_gap <= 1e-9,
          fmt("min certified dE = %.4f >= 1/3 - 1e-9 over 200 projectors; certified - re-measured <= %.1e",
              min_cert, worst_gap)};
}

std::vector<LocalModel> commuting_corpus() {
  std::vector<LocalModel> out;
  for (int n = 3; n <= 6; ++n) out.push_back(repetition_code_model(n));
  Rng rng(1005);
  int random_chains = 0;
  for (std::uint64_t k = 0; random_chains < 16 && k < 2000; ++k) {
    const int sites = random_int(3, 4, rng);
    Dims dims;
    for (int i = 0; i < sites; ++i) dims.push_back(random_int(2, 3, rng));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < sites; ++i) pairs.emplace_back(i, i + 1);
    LocalModel m = random_commuting_model(QuditSystem(dims), pairs, 5000 + k, CouplingOptions{2});
    try {
      if (ground_subspace(m.hamiltonian(), m.system().dims()).degeneracy() < 2) continue;
    } catch (const NumericalError&) {
      continue;
    }
    out.push_back(std::move(m));
    ++random_chains;
  }
  out.push_back(random_subsystem_chain({3, 2, 2, 1}, 1011));
  out.push_back(random_subsystem_chain({3, 2, 3, 1}, 1012));
  out.push_back(random_subsystem_chain({4, 2, 2, 1}, 1013));
  out.push_back(random_subsystem_chain({3, 2, 1, 2}, 1014));
  out.push_back(random_subsystem_chain({3, 2, 2, 2}, 1015));
  return out;
}

Outcome check_universal() {
  double min_cert = kInf;
  double min_multi = kInf;
  double worst_gap = -kInf;
  int models = 0;
  int multi = 0;
  int pair = 0;
  int mult = 0;
  for (const LocalModel& m : commuting_corpus()) {
    UniversalAttackOptions o;
    o.restarts = 2;
    const UniversalAttackReport r = universal_attack(m, o);
    const Matrix basis = oracle::kernel(m.hamiltonian());
    const double measured =
        oracle::splitting(basis, oracle::embed_single(r.analytic.x.matrix(), r.analytic.site, m.system().dims()));
    min_cert = std::min(min_cert, r.analytic.certified_delta_e);
    worst_gap = std::max(worst_gap, r.analytic.certified_delta_e - measured);
    if (r.branch == AttackBranch::kMultiSector) {
      ++multi;
      min_multi = std::min(min_multi, r.analytic.certified_delta_e);
    }
    pair += r.branch == AttackBranch::kPairFactor ? 1 : 0;
    mult += r.branch == AttackBranch::kMultiplicity ? 1 : 0;
    ++models;
  }
  return {min_cert >= 1.0 / 3.0 - 1e-9 && min_multi >= 1.0 - 1e-9 && worst_gap <= 1e-9,
          fmt("%d models (%d multi-sector, %d pair-factor, %d multiplicity): min certified dE = %.4f >= 1/3 - 1e-9; "
              "multi-sector min %.4f >= 1 - 1e-9; certified - re-measured <= %.1e",
              models, multi, pair, mult, min_cert, min_multi, worst_gap)};
}

Outcome check_gap_bound() {
  Rng rng(1006);
  const std::vector<double> gs{10.0, 100.0, 1000.0, 10000.0};
  const std::vector<double> ts = linspace(0.0, 10.0, 50);
  double worst_excess = -kInf;
  double ratio_lo = kInf;
  double ratio_hi = 0.0;
  double worst_lib = 0.0;
  for (int model = 0; model < 4; ++model) {
    const int d = random_int(2, 3, rng);
    const Matrix p = random_projector(d * d, 2, rng);
    const Matrix h0 = Matrix::Identity(d * d, d * d) - p;
    const Matrix v = random_hermitian_unit(d * d, rng, 0.5);
    const double vn = oracle::spectral_norm(v);
    const CodeSubspace code = ground_subspace(h0, Dims{d, d});
    std::vector<double> peaks;
    for (double g : gs) {
      const std::vector<GapBoundRow> rows = gap_bound_check(h0, code, v, g, ts);
      double peak = 0.0;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        const double lhs =
            oracle::spectral_norm(oracle::propagator(g * h0 + v, t) * p - oracle::propagator(p * v * p, t) * p);
        const double rhs = 4.0 * vn / g * (vn * t + 1.0);
        worst_excess = std::max(worst_excess, lhs - rhs);
        worst_lib = std::max(worst_lib, std::abs(rows[k].lhs - lhs));
        peak = std::max(peak, lhs);
      }
      peaks.push_back(peak);
    }
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
      ratio_lo = std::min(ratio_lo, peaks[i] / peaks[i + 1]);
      ratio_hi = std::max(ratio_hi, peaks[i] / peaks[i + 1]);
    }
  }
  return {worst_excess <= 0.0 && ratio_lo >= 5.0 && ratio_hi <= 20.0 && worst_lib <= 1e-8,
          fmt("max(lhs - rhs) = %.3e <= 0 at 800 points; decade ratios in [%.2f, %.2f] within [5, 20]", worst_excess,
              ratio_lo, ratio_hi)};
}

Outcome check_dephasing() {
  const LocalModel m = repetition_code_model(3);
  const Matrix h0 = m.hamiltonian();
  const CodeSubspace code = ground_subspace(h0, m.system().dims());
  const Matrix z1 = oracle::embed_single(oracle::pauli('Z'), 0, Dims{2, 2, 2});
  const Matrix x1 = oracle::embed_single(oracle::pauli('X'), 0, Dims{2, 2, 2});
  const auto dist = NoiseDistribution::gaussian(0.0, 0.1);
  Vector plus = Vector::Zero(8);
  plus(0) = plus(7) = 1.0 / std::sqrt(2.0);
  const Matrix rho0 = plus * plus.adjoint();
  double finite = 0.0;
  double surrogate = 0.0;
  double prediction = 0.0;
  // X1 leaves the code, so only the second perturbation feels the finite gap.
  for (const Matrix& v : {z1, Matrix(z1 + 0.5 * x1)}) {
    for (double t : linspace(0.0, 5.0, 21)) {
      Matrix ref = rho0;
      ref(0, 7) *= oracle::gaussian_cf_abs(0.1, 2.0 * t);
      ref(7, 0) *= oracle::gaussian_cf_abs(0.1, 2.0 * t);
      prediction = std::max(prediction, max_abs_deviation(predict_dephasing(code, v, dist, rho0, t), ref));
      finite = std::max(finite, max_abs_deviation(evolve_mixture(h0, 1000.0, v, dist, rho0, t), ref));
      surrogate = std::max(surrogate, max_abs_deviation(evolve_surrogate(code, v, dist, rho0, t), ref));
    }
  }
  return {finite <= 5e-2 && surrogate <= 1e-9 && prediction <= 1e-12,
          fmt("g = 1e3 deviation = %.3e <= 5e-2; surrogate deviation = %.3e <= 1e-9; prediction vs closed form "
              "%.1e",
              finite, surrogate, prediction)};
}

Outcome check_coherence() {
  const auto g = NoiseDistribution::gaussian(0.0, 0.1);
  const CoherenceReport r = coherence_time(g, 2.0, 0.01);
  const double tau_ref = oracle::gaussian_coherence_c(0.1, 0.01) / 2.0;
  const CoherenceReport doubled = coherence_time(g, 4.0, 0.01);
  const CoherenceReport small = coherence_time(g, 2.0, 1e-4);
  const double e1 = std::abs(r.tau_eps - tau_ref);
  const double e2 = std::abs(r.tau_eps - 0.7089);
  const double e3 = std::abs(doubled.tau_eps - 0.5 * r.tau_eps);
  const double e4 = std::abs(small.c_small - small.c_eps) / small.c_eps;
  return {e1 <= 1e-3 && e2 <= 1e-3 && e3 <= 1e-9 && e4 <= 0.01,
          fmt("tau = %.5f (|tau - oracle| = %.1e, |tau - 0.7089| = %.1e <= 1e-3); halving %.1e <= 1e-9; "
              "small-eps rel. error %.2e <= 1e-2",
              r.tau_eps, e1, e2, e3, e4)};
}

Outcome check_fidelity() {
  struct Fixture {
    LocalModel model;
    Matrix v;
    NoiseDistribution dist;
  };
  Rng rng(1009);
  std::vector<Fixture> fixtures;
  fixtures.push_back({repetition_code_model(3), oracle::embed_single(oracle::pauli('Z'), 0, Dims{2, 2, 2}),
                      NoiseDistribution::gaussian(0.0, 0.1)});
  fixtures.push_back({four_two_two_model(), oracle::embed_on(oracle::pauli_string("XX"), {0, 1}, Dims(4, 2)),
                      NoiseDistribution::uniform(-0.2, 0.3)});
  {
    LocalModel chain = random_subsystem_chain({3, 2, 2, 1}, 1010);
    const int d = chain.system().site_dim(1);
    Matrix v = oracle::embed_single(random_hermitian_unit(d, rng), 1, chain.system().dims());
    fixtures.push_back({std::move(chain), std::move(v), NoiseDistribution::discrete({-1.0, 0.5, 2.0}, {0.2, 0.5, 0.3})});
  }
  const std::vector<double> ts = linspace(0.0, 10.0, 41);
  double worst = -kInf;
  int points = 0;
  for (const Fixture& f : fixtures) {
    const CodeSubspace code = ground_subspace(f.model.hamiltonian(), f.model.system().dims());
    const double de = oracle::splitting(code.basis(), f.v);
    for (int s = 0; s < 3; ++s) {
      const Ket psi = Ket::normalized(code.basis() * random_gaussian(code.degeneracy(), 1, rng), code.dims());
      for (const FidelityRow& row : fidelity_bound_check(code, f.v, f.dist, psi, ts)) {
        const double bound = 1.0 - row.t * row.t * f.dist.second_moment() * de * de / 8.0;
        worst = std::max(worst, bound - row.fidelity);
        ++points;
      }
    }
  }
  return {worst <= 1e-12, fmt("max(bound - F) = %.3e <= 1e-12 at %d points", worst, points)};
}

Outcome check_bath() {
  Rng rng(1010);
  const LocalModel m = repetition_code_model(3);
  const Matrix hs = m.hamiltonian();
  const Matrix v = random_hermitian_unit(8, rng);
  const Matrix rho0 = random_ket(m.system().dims(), rng).outer();
  struct Spec {
    std::vector<double> lambdas, energies;
    double beta;
  };
  const std::vector<Spec> specs{{{-1.0, 1.0}, {0.0, 1.0}, 1.0}, {{-1.0, 0.0, 2.0}, {0.0, 0.5, 1.3}, 0.7}};
  double worst_lib = 0.0;
  double worst_ref = 0.0;
  for (const Spec& s : specs) {
    const int k = static_cast<int>(s.lambdas.size());
    std::vector<double> p(k);
    double z = 0.0;
    for (int i = 0; i < k; ++i) z += p[i] = std::exp(-s.beta * s.energies[i]);
    Matrix rho_b = Matrix::Zero(k, k);
    Matrix h_b = Matrix::Zero(k, k);
    Matrix h = oracle::kron(hs, Matrix::Identity(k, k));
    for (int i = 0; i < k; ++i) {
      p[i] /= z;
      rho_b(i, i) = p[i];
      h_b(i, i) = s.energies[i];
      Matrix proj = Matrix::Zero(k, k);
      proj(i, i) = 1.0;
      h += s.lambdas[i] * oracle::kron(v, proj);
    }
    h += oracle::kron(Matrix::Identity(8, 8), h_b);
    const BathModel model = thermal_bath(s.lambdas, s.energies, s.beta, v);
    for (double t : linspace(0.0, 5.0, 20)) {
      const Matrix u = oracle::propagator(h, t);
      const Matrix joint = u * oracle::kron(rho0, rho_b) * u.adjoint();
      const Matrix reduced = oracle::partial_trace(joint, {8, k}, {0});
      const Matrix mixture = oracle::discrete_mixture(hs, v, s.lambdas, p, rho0, t);
      worst_ref = std::max(worst_ref, (reduced - mixture).cwiseAbs().maxCoeff());
      worst_lib = std::max(worst_lib, bath_embedding_check(hs, model, rho0, t));
    }
  }
  return {worst_ref <= 1e-10 && worst_lib <= 1e-10,
          fmt("library deviation = %.3e, oracle deviation = %.3e <= 1e-10 at 40 points", worst_lib, worst_ref)};
}

Outcome check_factorization() {
  Rng rng(1011);
  std::vector<LocalModel> fixtures;
  for (int rank : {1, 2, 3}) {
    std::vector<LocalTerm> terms;
    for (int i : {0, 2}) terms.push_back({{i, i + 1}, Matrix::Identity(4, 4) - random_projector(4, rank, rng)});
    fixtures.push_back(build_two_local_model(QuditSystem(Dims{2, 2, 2, 2}), std::move(terms)));
  }
  fixtures.push_back(random_subsystem_chain({3, 2, 2, 1}, 1021));
  fixtures.push_back(random_subsystem_chain({3, 2, 3, 1}, 1022));
  fixtures.push_back(random_subsystem_chain({4, 2, 2, 1}, 1023));
  fixtures.push_back(random_subsystem_chain({3, 2, 2, 2}, 1024));
  fixtures.push_back(random_subsystem_chain({3, 2, 1, 2}, 1025));
  fixtures.push_back(random_subsystem_chain({3, 3, 4, 1}, 1026));

  double worst_residual = 0.0;
  double worst_rebuild = 0.0;
  for (const LocalModel& m : fixtures) {
    const CodeSubspace code = ground_subspace(m.hamiltonian(), m.system().dims());
    const GroundFactorization f = factor_ground_projector(m, code, 0);
    worst_residual = std::max({worst_residual, f.units_residual, f.support_residual, f.reconstruction_error});

    const Dims vdims = f.virtual_dims();
    int vd = 1;
    for (int d : vdims) vd *= d;
    Matrix product = Matrix::Identity(vd, vd);
    for (const PairFactor& p : f.pairs) product = product * oracle::embed_on(p.projector, {p.left_index, p.right_index}, vdims);
    Matrix iso = Matrix::Identity(1, 1);
    for (const Matrix& w : f.isometries) iso = oracle::kron(iso, w);
    const Matrix basis = oracle::kernel(m.hamiltonian());
    worst_rebuild = std::max(worst_rebuild, oracle::spectral_norm(iso * product * iso.adjoint() - basis * basis.adjoint()));
  }
  return {worst_residual <= 1e-6 && worst_rebuild <= 1e-6,
          fmt("%zu fixtures: max residual = %.3e <= 1e-6; ||V (prod P_ij) V^+ - P_C|| = %.3e <= 1e-6",
              fixtures.size(), worst_residual, worst_rebuild)};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"ids_duality", 30.0, check_ids_duality},     {"stabilizer", 10.0, check_stabilizer},
      {"no_hiding", 120.0, check_no_hiding},        {"two_site_attack", 30.0, check_two_site},
      {"universal_attack", 120.0, check_universal}, {"gap_bound", 60.0, check_gap_bound},
      {"dephasing", 60.0, check_dephasing},         {"coherence_time", 5.0, check_coherence},
      {"fidelity_bound", 30.0, check_fidelity},     {"bath_embedding", 30.0, check_bath},
      {"factorization", 60.0, check_factorization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < criteria[i].budget_seconds;
    const bool pass = o.passed && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %2zu %-17s %s [%.1f s < %.0f s%s]\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.summary.c_str(), secs, criteria[i].budget_seconds, in_time ? "" : " EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
