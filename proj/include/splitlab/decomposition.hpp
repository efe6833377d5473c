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

// Structure of commuting 2-local Hamiltonians. The operators a site sees
// from its terms generate a *-algebra; its central projectors split the site
// into sectors, and inside one sector the site factors into one virtual
// subsystem per neighbour plus a multiplicity space. When the code sits in a
// single sector everywhere, its projector is a product of pair projectors on
// those virtual subsystems.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "splitlab/ids.hpp"
#include "splitlab/model.hpp"
#include "splitlab/no_hiding.hpp"

namespace splitlab {

struct SchmidtTerm {
  Matrix left;   // on the first site, unit Hilbert-Schmidt norm
  Matrix right;  // on the second site, unit Hilbert-Schmidt norm
  double weight;
};

/// H = sum_a s_a L_a (x) R_a for an operator on a d_left x d_right pair.
/// Terms with weight below 1e-12 of the largest are dropped.
std::vector<SchmidtTerm> operator_schmidt(const Matrix& h, int d_left, int d_right);

struct OperatorAlgebra {
  std::vector<Matrix> basis;  // Hilbert-Schmidt orthonormal
  int dim() const { return static_cast<int>(basis.size()); }
};

/// Smallest *-algebra containing the identity and the given operators.
OperatorAlgebra generate_algebra(const std::vector<Matrix>& generators, int d);

/// Algebra generated on `site` by the site-side Schmidt factors of every
/// term touching it. Requires a commuting model with terms on at most two
/// sites (UnsupportedInput otherwise).
OperatorAlgebra site_algebra(const LocalModel& model, int site);

/// Elements of the algebra commuting with all of it.
OperatorAlgebra algebra_center(const OperatorAlgebra& algebra);

struct SiteSectorDecomposition {
  int site = 0;
  std::vector<Projector> projectors;
  int algebra_dim = 0;
  double block_certificate = 0.0;  // max ||[Pi_mu, H_term]|| over terms at the site
};

/// Throws NumericalError when block_certificate exceeds 1e-8 times the
/// largest term norm.
SiteSectorDecomposition sector_projectors(const LocalModel& model, int site, std::uint64_t seed = 0);

struct SectorSupport {
  int site = 0;
  std::vector<int> sectors;     // populated sector indices
  std::vector<double> weights;  // ||Pi_mu P_C Pi_mu|| for every sector
  bool multi_sector() const { return sectors.size() >= 2; }
};

SectorSupport detect_multi_sector(const CodeSubspace& code, const SiteSectorDecomposition& decomp);

/// X = Pi_nu for the last populated sector nu; exp(i pi X) maps a ground
/// state to an orthogonal one. Throws InvalidArgument on a single-sector site.
AttackReport multi_sector_attack(const CodeSubspace& code, const SiteSectorDecomposition& decomp);

struct VirtualFactor {
  int site = 0;
  int neighbour = -1;  // -1 marks the multiplicity space
  int dim = 1;
};

struct PairFactor {
  std::pair<int, int> sites;
  int left_index = 0;   // positions in GroundFactorization::factors
  int right_index = 0;
  Matrix projector;     // on dims {left.dim, right.dim}
  int rank = 0;
};

struct GroundFactorization {
  std::vector<int> sector;                // mu_i per site
  std::vector<Matrix> isometries;         // site i: d_i x prod(virtual dims of i)
  std::vector<VirtualFactor> factors;     // virtual subsystems, site-major
  std::vector<PairFactor> pairs;
  double units_residual = 0.0;            // worst ||W^+ a W - x (x) I|| over pair algebras
  double support_residual = 0.0;          // ||B - V V^+ B|| for the code basis B
  double reconstruction_error = 0.0;      // ||P_C' - prod of pair factors||

  Dims virtual_dims() const;
  std::vector<int> factors_of(int site) const;
  /// Lifts an operator on virtual factor `index` to its physical site,
  /// acting as `outside` times identity off the sector.
  Matrix lift(const Matrix& op, int index, double outside = 1.0) const;
};

/// Requires every site to be single-sector. Throws UnsupportedInput for
/// multi-sector input and NumericalError when a residual exceeds 1e-6.
GroundFactorization factor_ground_projector(const LocalModel& model, const CodeSubspace& code,
                                            std::uint64_t seed = 0);

/// Same as factor_ground_projector without the residual gate.
GroundFactorization factor_ground_projector_unchecked(const LocalModel& model, const CodeSubspace& code,
                                                      const std::vector<SiteSectorDecomposition>& decomps,
                                                      std::uint64_t seed = 0);

enum class AttackBranch { kMultiSector, kPairFactor, kMultiplicity };
std::string to_string(AttackBranch b);

struct UniversalAttackOptions {
  int restarts = 4;
  AscentOptions ascent;
  std::uint64_t seed = 0;
};

struct UniversalAttackReport {
  AttackBranch branch = AttackBranch::kMultiSector;
  AttackReport analytic;
  AttackReport refined;
  double measured_delta_e = 0.0;  // ids of the analytic X on the code
  std::vector<SiteSectorDecomposition> sectors;
  std::vector<SectorSupport> supports;
  std::optional<GroundFactorization> factorization;
};

/// Single-site attack with an analytic guarantee (>= 1/3, or >= 1 on the
/// multi-sector branch), refined by alternating ascent from the analytic X.
UniversalAttackReport universal_attack(const LocalModel& model, const UniversalAttackOptions& options = {});
UniversalAttackReport universal_attack(const LocalModel& model, const CodeSubspace& code,
                                       const UniversalAttackOptions& options = {});

nlohmann::json to_json(const UniversalAttackReport& report);

}  // namespace splitlab
