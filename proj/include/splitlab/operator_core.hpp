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

// Dense operator primitives on tensor-product Hilbert spaces.
//
// Site ordering follows the Kronecker convention: site 0 is the most
// significant index, so tensor({A, B}) == kron(A, B) and a basis label
// (x_0, ..., x_{n-1}) maps to sum_k x_k * prod_{l>k} d_l.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "splitlab/errors.hpp"

namespace splitlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

/// Product of site dimensions. Throws on non-positive entries or an empty list.
int total_dim(const Dims& dims);

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw InvalidArgument("operator_norm: non-finite entries");
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  return svd.singularValues()(0);
}

/// Sum of singular values (Schatten 1-norm).
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw InvalidArgument("trace_norm: non-finite entries");
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  const auto& s = svd.singularValues();
#ifdef SPLITLAB_MUTATE_TRACE_NORM
  return s.sum() - 2.0 * s(s.size() - 1);
#else
  return s.sum();
#endif
}

/// Kronecker product, first argument most significant.
template <typename A, typename B>
Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Hermitian part (M + M^dagger) / 2.
template <typename Derived>
typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (0.5 * (m + m.adjoint())).eval();
}

// Maps a (rest, local) label pair to a full basis index for a subset of
// sites. `local` enumerates the support sites in the order given; `rest`
// enumerates the complement in ascending site order.
class SiteIndexer {
 public:
  SiteIndexer(const Dims& dims, std::span<const int> support);

  int local_dim() const { return static_cast<int>(local_offset_.size()); }
  int rest_dim() const { return static_cast<int>(rest_offset_.size()); }
  int full(int rest, int local) const { return rest_offset_[rest] + local_offset_[local]; }

 private:
  std::vector<int> local_offset_;
  std::vector<int> rest_offset_;
};

// ---------------------------------------------------------------------------
// Validated value types

class Ket {
 public:
  /// Throws unless |amplitudes| == 1 within 1e-12 and size == prod(dims).
  Ket(Vector amplitudes, Dims dims);
  /// Normalizes first; throws on a zero vector.
  static Ket normalized(const Vector& v, Dims dims);
  static Ket basis_state(const Dims& dims, int index);

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  Matrix outer() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
  Dims dims_;
};

class HermOp {
 public:
  /// Checks ||M - M^dagger|| <= 1e-10 ||M|| and stores the Hermitian part.
  HermOp(const Matrix& m, Dims dims);
  explicit HermOp(const Matrix& m) : HermOp(m, Dims{static_cast<int>(m.rows())}) {}

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  Dims dims_;
};

class DensityOp {
 public:
  /// Hermitian, eigenvalues >= -1e-10, unit trace within 1e-10.
  DensityOp(const Matrix& m, Dims dims);
  static DensityOp pure(const Ket& k) { return DensityOp(k.outer(), k.dims()); }

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }

 private:
  Matrix matrix_;
  Dims dims_;
};

class Projector {
 public:
  /// Hermitian, P^2 == P within 1e-10 and trace == rank within 1e-8.
  Projector(const Matrix& m, Dims dims);
  /// P = B B^dagger for a matrix of orthonormal columns (checked).
  static Projector from_basis(const Matrix& basis, Dims dims);

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int rank() const { return rank_; }

 private:
  Projector(Matrix m, Dims dims, int rank) : matrix_(std::move(m)), dims_(std::move(dims)), rank_(rank) {}
  Matrix matrix_;
  Dims dims_;
  int rank_ = 0;
};

// ---------------------------------------------------------------------------
// Operations

/// Kronecker product of the factors in site order; dims concatenate.
Matrix tensor(std::span<const Matrix> factors);
HermOp tensor(std::span<const HermOp> factors);
Ket tensor(std::span<const Ket> factors);

/// Traces out every site not in `keep`. The kept sites appear in ascending order.
Matrix partial_trace(const Matrix& m, const Dims& dims, std::span<const int> keep);

/// Places `op` (acting on `support`, in the listed order) into the full space.
Matrix embed_operator(const Matrix& op, std::span<const int> support, const Dims& dims);

/// Applies `op` on `support` to every column of `vectors` without forming the
/// full operator.
Matrix apply_local(const Matrix& op, std::span<const int> support, const Dims& dims,
                   const Matrix& vectors);

/// Reduced density matrix of a pure state on `keep` (listed order), formed
/// without the full outer product.
Matrix reduced_state(const Vector& psi, const Dims& dims, std::span<const int> keep);

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, largest-magnitude entry real positive
};

/// Hermitian eigendecomposition after symmetrization. Throws if the input is
/// not Hermitian within 1e-10 of its norm.
EigenDecomposition herm_eig(const Matrix& h);
inline EigenDecomposition herm_eig(const HermOp& h) { return herm_eig(h.matrix()); }

/// exp(-i t H) through the eigendecomposition.
Matrix herm_propagator(const Matrix& h, double t);
inline Matrix herm_propagator(const HermOp& h, double t) { return herm_propagator(h.matrix(), t); }

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), evaluated as the trace
/// norm of sqrt(rho) sqrt(sigma) so the result is symmetric.
double fidelity(const DensityOp& rho, const DensityOp& sigma);

/// Positive semidefinite square root; eigenvalues below 1e-13 of the largest
/// are treated as zero.
Matrix psd_sqrt(const Matrix& m);

struct HelstromResult {
  double distance;      // (1/2) || rho0 - rho1 ||_1
  Projector optimal;    // projector onto the nonnegative eigenspace of rho0 - rho1
};

HelstromResult helstrom(const DensityOp& rho0, const DensityOp& rho1);

/// Helstrom projector of a Hermitian difference (zero eigenspace included).
Matrix nonnegative_projector(const Matrix& delta);

}  // namespace splitlab
