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

#include "splitlab/ids.hpp"

#include <algorithm>

#include "splitlab/random.hpp"

namespace splitlab {

IdsReport ids_from_compressed(const CodeSubspace& code, const Matrix& compressed) {
  if (compressed.rows() != code.degeneracy() || compressed.cols() != code.degeneracy())
    throw InvalidArgument("ids: compressed matrix does not match the code degeneracy");
  const EigenDecomposition e = herm_eig(compressed);
  const Eigen::Index top = e.values.size() - 1;
  const double lo = e.values(0);
  const double hi = e.values(top);
  return IdsReport{
      .delta_e = hi - lo,
      .lambda_min = lo,
      .lambda_max = hi,
      .alpha_opt = 0.5 * (hi + lo),
      .kl_deviation = 0.5 * (hi - lo),
      .witness_psi = Ket::normalized(code.basis() * e.vectors.col(top), code.dims()),
      .witness_phi = Ket::normalized(code.basis() * e.vectors.col(0), code.dims()),
  };
}

IdsReport ids(const CodeSubspace& code, const Matrix& v) {
  return ids_from_compressed(code, project_onto_code(code, v));
}

IdsReport ids_local(const CodeSubspace& code, const Matrix& op, std::span<const int> support) {
  return ids_from_compressed(code, project_local_onto_code(code, op, support));
}

namespace {

KlResult kl_from(const IdsReport& r, double norm, double tol) {
  return {r.kl_deviation <= tol * norm, r.alpha_opt, r.kl_deviation};
}

}  // namespace

KlResult kl_check(const CodeSubspace& code, const Matrix& v, double tol) {
  return kl_from(ids(code, v), operator_norm(v), tol);
}

KlResult kl_check_local(const CodeSubspace& code, const Matrix& op, std::span<const int> support, double tol) {
  return kl_from(ids_local(code, op, support), operator_norm(op), tol);
}

std::string to_string(Guarantee g) { return g == Guarantee::kAnalytic ? "analytic" : "numeric"; }

AttackReport worst_single_site_ascent(const CodeSubspace& code, int site, const AscentOptions& options) {
  if (site < 0 || site >= static_cast<int>(code.dims().size())) throw InvalidArgument("ascent: site out of range");
  const int d = code.dims()[site];
  const std::vector<int> support{site};

  Matrix x;
  if (options.start) {
    x = hermitian_part(*options.start);
    if (x.rows() != d) throw InvalidArgument("ascent: starting operator does not match the site dimension");
  } else {
    Rng rng(options.seed);
    x = random_hermitian_unit(d, rng);
  }
  const double n0 = operator_norm(x);
  if (n0 > 0.0) x /= n0;

  IdsReport current = ids_local(code, x, support);
  Matrix best_x = x;
  IdsReport best = current;
  std::vector<double> history{current.delta_e};

  for (int it = 0; it < options.iters; ++it) {
    const Matrix rho_psi = reduced_state(current.witness_psi.amplitudes(), code.dims(), support);
    const Matrix rho_phi = reduced_state(current.witness_phi.amplitudes(), code.dims(), support);
    const Matrix pi = nonnegative_projector(rho_psi - rho_phi);
    const Matrix next_x = 2.0 * pi - Matrix::Identity(d, d);
    const IdsReport next = ids_local(code, next_x, support);
    history.push_back(next.delta_e);
    const double gain = next.delta_e - best.delta_e;
    if (gain > 0.0) {
      best = next;
      best_x = next_x;
    }
    current = next;
    if (gain < options.min_improvement) break;
  }

  return AttackReport{
      .site = site,
      .x = HermOp(best_x, Dims{d}),
      .certified_delta_e = best.delta_e,
      .witness_psi = best.witness_psi,
      .witness_phi = best.witness_phi,
      .guarantee = Guarantee::kNumeric,
      .history = std::move(history),
  };
}

AttackReport worst_single_site_search(const CodeSubspace& code, int site, int restarts,
                                      const AscentOptions& options, const std::vector<Matrix>& extra_starts) {
  std::optional<AttackReport> best;
  auto consider = [&](AttackReport r) {
    if (!best || r.certified_delta_e > best->certified_delta_e) best = std::move(r);
  };
  for (const auto& s : extra_starts) {
    AscentOptions o = options;
    o.start = s;
    consider(worst_single_site_ascent(code, site, o));
  }
  for (int k = 0; k < restarts; ++k) {
    AscentOptions o = options;
    o.start.reset();
    o.seed = options.seed + static_cast<std::uint64_t>(k);
    consider(worst_single_site_ascent(code, site, o));
  }
  if (!best) throw InvalidArgument("ascent search: no starts requested");
  return std::move(*best);
}

}  // namespace splitlab
