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

#pragma once

#include <limits>

#include "splitlab/operator_core.hpp"

namespace splitlab {

inline constexpr double kDefaultDegeneracyTol = 1e-8;

// Degenerate ground subspace of a Hamiltonian, used as a code.
class CodeSubspace {
 public:
  /// Code spanned by orthonormal columns; gap is infinite (no Hamiltonian).
  static CodeSubspace from_basis(const Matrix& basis, Dims dims);
  /// Range of a projector, basis ordered by the projector's eigenvectors.
  static CodeSubspace from_projector(const Projector& p);
  /// The whole Hilbert space: the unprotected H0 = 0 baseline.
  static CodeSubspace full_space(const Dims& dims);

  const Matrix& basis() const { return basis_; }  // D x d
  const Dims& dims() const { return dims_; }
  int degeneracy() const { return static_cast<int>(basis_.cols()); }
  int dim() const { return static_cast<int>(basis_.rows()); }
  double gap() const { return gap_; }
  double ground_energy() const { return ground_energy_; }

  /// P_C = sum_k b_k b_k^dagger, formed on demand.
  Projector projector() const { return Projector::from_basis(basis_, dims_); }

 private:
  friend CodeSubspace ground_subspace(const Matrix& h0, const Dims& dims, double degeneracy_tol);
  CodeSubspace(Matrix basis, Dims dims, double gap, double ground_energy)
      : basis_(std::move(basis)), dims_(std::move(dims)), gap_(gap), ground_energy_(ground_energy) {}

  Matrix basis_;
  Dims dims_;
  double gap_ = std::numeric_limits<double>::infinity();
  double ground_energy_ = 0.0;
};

/// Ground cluster = eigenvalues within degeneracy_tol * spread of the minimum.
/// Throws NumericalError("no gap") when every eigenvalue is in the cluster.
CodeSubspace ground_subspace(const Matrix& h0, const Dims& dims, double degeneracy_tol = kDefaultDegeneracyTol);
inline CodeSubspace ground_subspace(const HermOp& h0, double degeneracy_tol = kDefaultDegeneracyTol) {
  return ground_subspace(h0.matrix(), h0.dims(), degeneracy_tol);
}

/// d x d matrix <b_m|V|b_n> in the code basis.
Matrix project_onto_code(const CodeSubspace& code, const Matrix& v);
inline Matrix project_onto_code(const CodeSubspace& code, const HermOp& v) {
  return project_onto_code(code, v.matrix());
}

/// Same compression for an operator acting on a few sites only.
Matrix project_local_onto_code(const CodeSubspace& code, const Matrix& op, std::span<const int> support);

}  // namespace splitlab
