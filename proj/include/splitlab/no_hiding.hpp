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

// No two orthonormal states of a bipartite two-dimensional subspace can look
// alike on both halves. For a pair (psi, phi) the score is
//
//   ||Tr_A(psi psi^+ - phi phi^+)||_1 + ||Tr_B(psi psi^+ - phi phi^+)||_1,
//
// and some pair among (b0, b1) and (b0 +- i^s b1)/sqrt(2), s = 0, 1, always
// scores at least 2/3. A single-site observable on the better side then
// splits any code containing the subspace.

#pragma once

#include <cstdint>
#include <string>

#include "splitlab/ids.hpp"

namespace splitlab {

enum class Side { kA, kB };
std::string to_string(Side s);

// Sites [0, cut) form A, the remaining sites form B.
struct Bipartition {
  int cut = 1;
};

struct PairScore {
  double a = 0.0;  // ||rho_psi^A - rho_phi^A||_1 (B traced out)
  double b = 0.0;  // ||rho_psi^B - rho_phi^B||_1 (A traced out)
  double total() const { return a + b; }
};

PairScore pair_score(const Vector& psi, const Vector& phi, const Dims& dims, Bipartition cut = {});

struct NoHidingWitness {
  Ket psi;
  Ket phi;
  double score = 0.0;
  PairScore parts;
  Side side = Side::kA;  // the half on which the pair is more distinguishable
  int candidate_id = 0;  // 0: (b0, b1); 1: s = 0; 2: s = 1
  double fidelity_f = 0.0;  // F(rho_0^A, rho_1^A) for the input basis
  double distance_d = 0.0;  // D(rho_0^A, rho_1^A) for the input basis
};

/// Best of the three analytic candidates. Throws if b0, b1 are not
/// orthonormal within 1e-10 or have different dims.
NoHidingWitness no_hiding_witness(const Ket& b0, const Ket& b1, Bipartition cut = {});

struct TwoSiteOptions {
  Bipartition cut;
  int redraws = 0;  // extra random 2D subspaces of supp(P) to try
  std::uint64_t seed = 0;
};

struct TwoSiteAttack {
  AttackReport report;      // x acts on A when side == kA, else on B
  NoHidingWitness witness;
  Side side = Side::kA;
  std::vector<int> support;  // sites of A or B carrying x
};

/// Single-side reflection X = 2 Pi - I, Pi the Helstrom projector of the
/// witness pair's reduced states on the better side. The certified value is
/// <psi|X|psi> - <phi|X|phi>, which equals that side's score and is at least
/// 1/3. Throws InvalidArgument when rank(P) < 2.
TwoSiteAttack two_site_attack(const Projector& p, const TwoSiteOptions& options = {});

struct ScanResult {
  double best_score = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Scores psi = cos(theta/2) b0 + e^{i phi} sin(theta/2) b1 and its
/// orthogonal partner on a grid_n x grid_n grid of theta in [0, pi] and
/// phi in [0, 2 pi], endpoints included. Lowest grid index wins ties. For
/// grid_n = 1 mod 4 the grid contains all three analytic candidates.
ScanResult subspace_pair_score_scan(const Ket& b0, const Ket& b1, int grid_n, Bipartition cut = {});

}  // namespace splitlab
