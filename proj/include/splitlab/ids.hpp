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

// Induced degeneracy splitting: how far a perturbation V breaks the
// degeneracy of a code. The splitting is the spread of the spectrum of the
// compression P V P on the code, which also equals twice the distance of
// P V P from the nearest multiple of P.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitlab/code_subspace.hpp"

namespace splitlab {

struct IdsReport {
  double delta_e = 0.0;  // lambda_max - lambda_min
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double alpha_opt = 0.0;     // midpoint of the extreme eigenvalues
  double kl_deviation = 0.0;  // min_alpha ||PVP - alpha P|| = delta_e / 2
  Ket witness_psi;            // <psi|V|psi> = lambda_max
  Ket witness_phi;            // <phi|V|phi> = lambda_min
};

/// IDS of a full-space Hermitian V.
IdsReport ids(const CodeSubspace& code, const Matrix& v);
inline IdsReport ids(const CodeSubspace& code, const HermOp& v) { return ids(code, v.matrix()); }

/// IDS of an operator acting on `support` only.
IdsReport ids_local(const CodeSubspace& code, const Matrix& op, std::span<const int> support);

/// IDS of an already compressed d x d matrix, with witnesses lifted through
/// the code basis.
IdsReport ids_from_compressed(const CodeSubspace& code, const Matrix& compressed);

struct KlResult {
  bool satisfied = false;
  double alpha = 0.0;
  double deviation = 0.0;
};

/// Error-detection condition P V P = alpha P, accepted when
/// kl_deviation <= tol * ||V||.
KlResult kl_check(const CodeSubspace& code, const Matrix& v, double tol);
KlResult kl_check_local(const CodeSubspace& code, const Matrix& op, std::span<const int> support, double tol);

enum class Guarantee { kAnalytic, kNumeric };
std::string to_string(Guarantee g);

// A single-site perturbation together with the splitting it certifiably
// causes on a code.
struct AttackReport {
  int site = 0;
  HermOp x;                       // acts on `site`, operator norm 1
  double certified_delta_e = 0.0;
  Ket witness_psi;
  Ket witness_phi;
  Guarantee guarantee = Guarantee::kNumeric;
  std::vector<double> history;    // per-iteration splitting for numeric searches
};

struct AscentOptions {
  int iters = 50;
  std::uint64_t seed = 0;
  std::optional<Matrix> start;    // unit-norm Hermitian on the site; random if empty
  double min_improvement = 1e-12;
};

/// Alternating ascent for the worst single-site X: (a) take the IDS witnesses
/// of the current X; (b) replace X by the Helstrom observable 2 Pi - I of the
/// witnesses' reduced states on the site. Each step cannot decrease the
/// splitting. The result is a lower bound on the true maximum.
AttackReport worst_single_site_ascent(const CodeSubspace& code, int site, const AscentOptions& options = {});

/// Runs `restarts` random starts plus any explicit starting operators and
/// keeps the best result (lowest restart index on ties). Explicit starts come
/// first.
AttackReport worst_single_site_search(const CodeSubspace& code, int site, int restarts,
                                      const AscentOptions& options,
                                      const std::vector<Matrix>& extra_starts = {});

}  // namespace splitlab
