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

#include "splitlab/no_hiding.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "splitlab/random.hpp"

namespace splitlab {

std::string to_string(Side s) { return s == Side::kA ? "A" : "B"; }

namespace {

struct Halves {
  std::vector<int> a;
  std::vector<int> b;
};

Halves split(const Dims& dims, Bipartition cut) {
  const int n = static_cast<int>(dims.size());
  if (cut.cut < 1 || cut.cut >= n)
    throw InvalidArgument("bipartition: cut must leave at least one site on each side");
  Halves h;
  h.a.resize(cut.cut);
  std::iota(h.a.begin(), h.a.end(), 0);
  h.b.resize(n - cut.cut);
  std::iota(h.b.begin(), h.b.end(), cut.cut);
  return h;
}

PairScore score_halves(const Vector& psi, const Vector& phi, const Dims& dims, const Halves& h) {
  return {trace_norm(reduced_state(psi, dims, h.a) - reduced_state(phi, dims, h.a)),
          trace_norm(reduced_state(psi, dims, h.b) - reduced_state(phi, dims, h.b))};
}

void require_orthonormal_pair(const Ket& b0, const Ket& b1) {
  if (b0.dims() != b1.dims()) throw InvalidArgument("no-hiding: basis states live on different spaces");
  if (std::abs(b0.amplitudes().dot(b1.amplitudes())) > 1e-10)
    throw InvalidArgument("no-hiding: basis states are not orthogonal");
}

}  // namespace

PairScore pair_score(const Vector& psi, const Vector& phi, const Dims& dims, Bipartition cut) {
  return score_halves(psi, phi, dims, split(dims, cut));
}

NoHidingWitness no_hiding_witness(const Ket& b0, const Ket& b1, Bipartition cut) {
  require_orthonormal_pair(b0, b1);
  const Dims& dims = b0.dims();
  const Halves h = split(dims, cut);
  const Vector& v0 = b0.amplitudes();
  const Vector& v1 = b1.amplitudes();

  const double r = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  const std::vector<std::pair<Vector, Vector>> candidates{
      {v0, v1},
      {r * (v0 + v1), r * (v0 - v1)},
      {r * (v0 + i_unit * v1), r * (v0 - i_unit * v1)},
  };

  int best = 0;
  PairScore best_parts;
  for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
    const PairScore s = score_halves(candidates[k].first, candidates[k].second, dims, h);
    if (k == 0 || s.total() > best_parts.total()) {
      best = k;
      best_parts = s;
    }
  }

  const Matrix rho0 = reduced_state(v0, dims, h.a);
  const Matrix rho1 = reduced_state(v1, dims, h.a);
  const Dims dims_a(dims.begin(), dims.begin() + cut.cut);
  const DensityOp d0(rho0, dims_a);
  const DensityOp d1(rho1, dims_a);

  return NoHidingWitness{
      .psi = Ket::normalized(candidates[best].first, dims),
      .phi = Ket::normalized(candidates[best].second, dims),
      .score = best_parts.total(),
      .parts = best_parts,
      .side = best_parts.a >= best_parts.b ? Side::kA : Side::kB,
      .candidate_id = best,
      .fidelity_f = fidelity(d0, d1),
      .distance_d = 0.5 * trace_norm(rho0 - rho1),
  };
}

namespace {

struct Candidate {
  NoHidingWitness witness;
  Matrix x;
  std::vector<int> support;
  double value;
};

Candidate attack_from_pair(const Ket& b0, const Ket& b1, const Halves& h, Bipartition cut) {
  NoHidingWitness w = no_hiding_witness(b0, b1, cut);
  const Dims& dims = b0.dims();
  const std::vector<int>& support = w.side == Side::kA ? h.a : h.b;
  const Matrix delta = reduced_state(w.psi.amplitudes(), dims, support) -
                       reduced_state(w.phi.amplitudes(), dims, support);
  const Eigen::Index d = delta.rows();
  Matrix x = 2.0 * nonnegative_projector(delta) - Matrix::Identity(d, d);
  const Vector xpsi = apply_local(x, support, dims, w.psi.amplitudes());
  const Vector xphi = apply_local(x, support, dims, w.phi.amplitudes());
  const double value = w.psi.amplitudes().dot(xpsi).real() - w.phi.amplitudes().dot(xphi).real();
  return {std::move(w), std::move(x), support, value};
}

}  // namespace

TwoSiteAttack two_site_attack(const Projector& p, const TwoSiteOptions& options) {
  if (p.rank() < 2) throw InvalidArgument("two-site attack: nothing to split (rank < 2)");
  const Dims& dims = p.dims();
  const Halves h = split(dims, options.cut);
  const CodeSubspace code = CodeSubspace::from_projector(p);
  const Matrix& range = code.basis();

  Candidate best = attack_from_pair(Ket::normalized(range.col(0), dims), Ket::normalized(range.col(1), dims), h,
                                    options.cut);
  Rng rng(options.seed);
  for (int k = 0; k < options.redraws; ++k) {
    const Matrix pair = range * random_isometry(code.degeneracy(), 2, rng);
    Candidate c =
        attack_from_pair(Ket::normalized(pair.col(0), dims), Ket::normalized(pair.col(1), dims), h, options.cut);
    if (c.value > best.value) best = std::move(c);
  }

  Dims support_dims;
  for (int s : best.support) support_dims.push_back(dims[s]);
  const Side side = best.witness.side;
  AttackReport report{
      .site = best.support.front(),
      .x = HermOp(best.x, support_dims),
      .certified_delta_e = best.value,
      .witness_psi = best.witness.psi,
      .witness_phi = best.witness.phi,
      .guarantee = Guarantee::kAnalytic,
      .history = {},
  };
  return TwoSiteAttack{std::move(report), std::move(best.witness), side, std::move(best.support)};
}

ScanResult subspace_pair_score_scan(const Ket& b0, const Ket& b1, int grid_n, Bipartition cut) {
  if (grid_n < 2) throw InvalidArgument("score scan: grid_n must be at least 2");
  require_orthonormal_pair(b0, b1);
  const Dims& dims = b0.dims();
  const Halves h = split(dims, cut);
  const Vector& v0 = b0.amplitudes();
  const Vector& v1 = b1.amplitudes();

  ScanResult best{-1.0, 0.0, 0.0};
  for (int i = 0; i < grid_n; ++i) {
    const double theta = std::numbers::pi * i / (grid_n - 1);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    for (int j = 0; j < grid_n; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / (grid_n - 1);
      const Complex e = std::polar(1.0, phi);
      const Vector psi = c * v0 + e * s * v1;
      const Vector perp = -std::conj(e) * s * v0 + c * v1;
      const double score = score_halves(psi, perp, dims, h).total();
      if (score > best.best_score) best = {score, theta, phi};
    }
  }
  return best;
}

}  // namespace splitlab
