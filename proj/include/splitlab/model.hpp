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

// Qudit systems and local Hamiltonians H0 = sum of terms, each acting on a
// small set of sites. All builders shift H0 so its ground energy is 0.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splitlab/noise.hpp"
#include "splitlab/operator_core.hpp"

namespace splitlab {

inline constexpr int kDefaultDimensionCap = 4096;

class QuditSystem {
 public:
  /// Every site dimension must be >= 2 and the total at most `cap`.
  explicit QuditSystem(Dims dims, int cap = kDefaultDimensionCap);

  const Dims& dims() const { return dims_; }
  int size() const { return static_cast<int>(dims_.size()); }
  int dim() const { return dim_; }
  int site_dim(int site) const { return dims_.at(site); }

 private:
  Dims dims_;
  int dim_ = 0;
};

struct LocalTerm {
  std::vector<int> sites;  // op's tensor factors follow this order
  Matrix op;
};

class LocalModel {
 public:
  const QuditSystem& system() const { return system_; }
  const std::vector<LocalTerm>& terms() const { return terms_; }

  /// True when all embedded terms pairwise commute within 1e-9 ||A|| ||B||.
  bool commuting() const { return commuting_; }
  /// max ||[A,B]|| / (||A|| ||B||) over overlapping term pairs.
  double commutator_certificate() const { return commutator_certificate_; }

  /// Largest term support.
  int locality() const;
  bool is_two_local() const { return locality() <= 2; }

  /// Constant subtracted from the sum of terms so the ground energy is 0.
  double energy_shift() const { return energy_shift_; }

  /// Embedded H0 including the shift.
  Matrix hamiltonian() const;

  /// Terms whose support contains `site`, as indices into terms().
  std::vector<int> terms_at(int site) const;

 private:
  friend LocalModel build_local_model(QuditSystem system, std::vector<LocalTerm> terms);
  explicit LocalModel(QuditSystem s) : system_(std::move(s)) {}

  QuditSystem system_;
  std::vector<LocalTerm> terms_;
  bool commuting_ = true;
  double commutator_certificate_ = 0.0;
  double energy_shift_ = 0.0;
};

using TwoLocalModel = LocalModel;

/// A Hermitian perturbation on a set of sites together with the distribution
/// of its random strength.
struct PerturbationSpec {
  PerturbationSpec(std::vector<int> support, HermOp op, NoiseDistribution distribution);

  std::vector<int> support;
  HermOp op;
  NoiseDistribution distribution;
};

/// General k-local model. Terms must be Hermitian, have distinct sites, and
/// no two terms may share the same site set (pre-sum them).
LocalModel build_local_model(QuditSystem system, std::vector<LocalTerm> terms);

/// As build_local_model, restricted to terms on one or two sites.
LocalModel build_two_local_model(QuditSystem system, std::vector<LocalTerm> terms);

/// The 2x2 Pauli matrix for 'I', 'X', 'Y' or 'Z'.
Matrix pauli(char symbol);

/// H0 = sum_g (I - g) / 2 for commuting Pauli strings such as "ZZI" (an
/// optional leading '+' or '-' sets the sign). Each term lives on the
/// non-identity positions of its generator.
LocalModel stabilizer_hamiltonian(int num_qubits, const std::vector<std::string>& generators);

/// Repetition code: generators Z_i Z_{i+1}.
LocalModel repetition_code_model(int n);

/// [[4,2,2]] code: generators XXXX and ZZZZ.
LocalModel four_two_two_model();

/// Merges consecutive site groups into single sites. Throws if a term
/// touches three or more groups.
LocalModel block_sites(const LocalModel& model, const std::vector<std::vector<int>>& grouping);

struct CouplingOptions {
  // 0 draws Gaussian couplings; n > 0 draws integers in [0, n - 1], which
  // produces degenerate ground spaces with useful probability.
  int levels = 0;
};

/// Commuting 2-local model: every pair term is diagonal in a random product
/// basis (one Haar unitary per site), so all terms commute by construction.
LocalModel random_commuting_model(const QuditSystem& system,
                                  const std::vector<std::pair<int, int>>& pairs,
                                  std::uint64_t seed, CouplingOptions options = {});

struct SubsystemChainOptions {
  int sites = 3;
  int virtual_dim = 2;   // dimension of each virtual pair subsystem
  int pair_rank = 2;     // rank of each pair's ground projector
  int multiplicity = 1;  // extra factor on every site that no term acts on
};

/// Chain whose sites factor as (left virtual) x (right virtual) x
/// (multiplicity) behind a random local unitary. Term (i, i+1) is I - P on
/// the virtual pair with P a random rank-`pair_rank` projector, so the ground
/// projector is a product of entangled pair projectors.
LocalModel random_subsystem_chain(const SubsystemChainOptions& options, std::uint64_t seed);

/// `op` acting on `support` (in order), identity elsewhere.
HermOp embed(const HermOp& op, std::span<const int> support, const QuditSystem& system);

/// Dimensions of the listed sites.
Dims support_dims(const QuditSystem& system, std::span<const int> support);

}  // namespace splitlab
