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

#include "splitlab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace splitlab {

namespace {

constexpr double kHermitianTol = 1e-10;

Dims concat_dims(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + ": matrix is not square");
}

void check_dims(const Matrix& m, const Dims& dims, const char* what) {
  if (m.rows() != total_dim(dims))
    throw InvalidArgument(std::string(what) + ": matrix size does not match dims");
}

// Frobenius-scaled test; the Frobenius norm bounds the operator norm from above.
bool is_hermitian(const Matrix& m, double tol) {
  const double scale = std::max(m.norm(), 1.0);
  return (m - m.adjoint()).norm() <= tol * scale;
}

void fix_phase(Eigen::Ref<Vector> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best * (1.0 + 1e-12)) {
      best = a;
      arg = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(arg)) / best;
}

}  // namespace

int total_dim(const Dims& dims) {
  if (dims.empty()) throw InvalidArgument("dims: empty site list");
  long long d = 1;
  for (int x : dims) {
    if (x <= 0) throw InvalidArgument("dims: site dimension must be positive");
    d *= x;
    if (d > std::numeric_limits<int>::max()) throw InvalidArgument("dims: total dimension overflows");
  }
  return static_cast<int>(d);
}

SiteIndexer::SiteIndexer(const Dims& dims, std::span<const int> support) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<bool> in_support(n, false);
  for (int s : support) {
    if (s < 0 || s >= n) throw InvalidArgument("site index out of range");
    if (in_support[s]) throw InvalidArgument("duplicate site index");
    in_support[s] = true;
  }

  auto offsets = [&](const std::vector<int>& sites) {
    std::vector<int> out{0};
    // Last listed site varies fastest.
    for (int s : sites) {
      std::vector<int> next;
      next.reserve(out.size() * dims[s]);
      for (int base : out)
        for (int x = 0; x < dims[s]; ++x) next.push_back(base + x * stride[s]);
      out = std::move(next);
    }
    return out;
  };

  std::vector<int> local(support.begin(), support.end());
  std::vector<int> rest;
  for (int k = 0; k < n; ++k)
    if (!in_support[k]) rest.push_back(k);
  local_offset_ = offsets(local);
  rest_offset_ = offsets(rest);
}

// ---------------------------------------------------------------------------

Ket::Ket(Vector amplitudes, Dims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amplitudes_.size() != total_dim(dims_)) throw InvalidArgument("Ket: length does not match dims");
  if (!amplitudes_.allFinite()) throw InvalidArgument("Ket: non-finite amplitudes");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) throw InvalidArgument("Ket: not normalized");
}

Ket Ket::normalized(const Vector& v, Dims dims) {
  const double n = v.norm();
  if (!(n > 0.0)) throw InvalidArgument("Ket: zero vector");
  return Ket(v / n, std::move(dims));
}

Ket Ket::basis_state(const Dims& dims, int index) {
  const int d = total_dim(dims);
  if (index < 0 || index >= d) throw InvalidArgument("Ket: basis index out of range");
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return Ket(std::move(v), dims);
}

HermOp::HermOp(const Matrix& m, Dims dims) : dims_(std::move(dims)) {
  check_square(m, "HermOp");
  check_dims(m, dims_, "HermOp");
  if (!m.allFinite()) throw InvalidArgument("HermOp: non-finite entries");
  if (!is_hermitian(m, kHermitianTol)) throw InvalidArgument("HermOp: matrix is not Hermitian");
  matrix_ = hermitian_part(m);
}

DensityOp::DensityOp(const Matrix& m, Dims dims) : dims_(std::move(dims)) {
  check_square(m, "DensityOp");
  check_dims(m, dims_, "DensityOp");
  if (!is_hermitian(m, kHermitianTol)) throw InvalidArgument("DensityOp: matrix is not Hermitian");
  matrix_ = hermitian_part(m);
  if (std::abs(matrix_.trace().real() - 1.0) > 1e-10) throw InvalidArgument("DensityOp: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -1e-10) throw InvalidArgument("DensityOp: negative eigenvalue");
}

Projector::Projector(const Matrix& m, Dims dims) : dims_(std::move(dims)) {
  check_square(m, "Projector");
  check_dims(m, dims_, "Projector");
  if (!is_hermitian(m, kHermitianTol)) throw InvalidArgument("Projector: matrix is not Hermitian");
  matrix_ = hermitian_part(m);
  if ((matrix_ * matrix_ - matrix_).norm() > 1e-10) throw InvalidArgument("Projector: not idempotent");
  const double tr = matrix_.trace().real();
  rank_ = static_cast<int>(std::lround(tr));
  if (std::abs(tr - rank_) > 1e-8) throw InvalidArgument("Projector: trace is not an integer");
}

Projector Projector::from_basis(const Matrix& basis, Dims dims) {
  if (basis.rows() != total_dim(dims)) throw InvalidArgument("Projector: basis length does not match dims");
  const Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() > 1e-10)
    throw InvalidArgument("Projector: basis is not orthonormal");
  return Projector(basis * basis.adjoint(), std::move(dims), static_cast<int>(basis.cols()));
}

// ---------------------------------------------------------------------------

Matrix tensor(std::span<const Matrix> factors) {
  if (factors.empty()) throw InvalidArgument("tensor: empty factor list");
  Matrix out = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

HermOp tensor(std::span<const HermOp> factors) {
  if (factors.empty()) throw InvalidArgument("tensor: empty factor list");
  Matrix out = factors[0].matrix();
  Dims dims = factors[0].dims();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    out = kron(out, factors[k].matrix());
    dims = concat_dims(dims, factors[k].dims());
  }
  return HermOp(out, dims);
}

Ket tensor(std::span<const Ket> factors) {
  if (factors.empty()) throw InvalidArgument("tensor: empty factor list");
  Vector out = factors[0].amplitudes();
  Dims dims = factors[0].dims();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    out = kron(out, factors[k].amplitudes());
    dims = concat_dims(dims, factors[k].dims());
  }
  return Ket::normalized(out, dims);
}

Matrix partial_trace(const Matrix& m, const Dims& dims, std::span<const int> keep) {
  check_square(m, "partial_trace");
  check_dims(m, dims, "partial_trace");
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  const SiteIndexer idx(dims, sorted);
  Matrix out = Matrix::Zero(idx.local_dim(), idx.local_dim());
  for (int a = 0; a < idx.local_dim(); ++a)
    for (int b = 0; b < idx.local_dim(); ++b) {
      Complex acc = 0.0;
      for (int r = 0; r < idx.rest_dim(); ++r) acc += m(idx.full(r, a), idx.full(r, b));
      out(a, b) = acc;
    }
  return out;
}

Matrix embed_operator(const Matrix& op, std::span<const int> support, const Dims& dims) {
  const SiteIndexer idx(dims, support);
  if (op.rows() != idx.local_dim() || op.cols() != idx.local_dim())
    throw InvalidArgument("embed: operator size does not match support dims");
  const int d = total_dim(dims);
  Matrix out = Matrix::Zero(d, d);
  for (int r = 0; r < idx.rest_dim(); ++r)
    for (int a = 0; a < idx.local_dim(); ++a)
      for (int b = 0; b < idx.local_dim(); ++b) out(idx.full(r, a), idx.full(r, b)) = op(a, b);
  return out;
}

Matrix apply_local(const Matrix& op, std::span<const int> support, const Dims& dims,
                   const Matrix& vectors) {
  const SiteIndexer idx(dims, support);
  if (op.rows() != idx.local_dim() || op.cols() != idx.local_dim())
    throw InvalidArgument("apply_local: operator size does not match support dims");
  if (vectors.rows() != total_dim(dims)) throw InvalidArgument("apply_local: vector length mismatch");
  Matrix out = Matrix::Zero(vectors.rows(), vectors.cols());
  Matrix block(idx.local_dim(), vectors.cols());
  for (int r = 0; r < idx.rest_dim(); ++r) {
    for (int b = 0; b < idx.local_dim(); ++b) block.row(b) = vectors.row(idx.full(r, b));
    const Matrix image = op * block;
    for (int a = 0; a < idx.local_dim(); ++a) out.row(idx.full(r, a)) = image.row(a);
  }
  return out;
}

Matrix reduced_state(const Vector& psi, const Dims& dims, std::span<const int> keep) {
  if (psi.size() != total_dim(dims)) throw InvalidArgument("reduced_state: vector length mismatch");
  const SiteIndexer idx(dims, keep);
  Matrix amp(idx.local_dim(), idx.rest_dim());
  for (int r = 0; r < idx.rest_dim(); ++r)
    for (int a = 0; a < idx.local_dim(); ++a) amp(a, r) = psi(idx.full(r, a));
  return amp * amp.adjoint();
}

EigenDecomposition herm_eig(const Matrix& h) {
  check_square(h, "herm_eig");
  if (!h.allFinite()) throw InvalidArgument("herm_eig: non-finite entries");
  if (!is_hermitian(h, kHermitianTol)) throw InvalidArgument("herm_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  if (es.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver did not converge");
  EigenDecomposition out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_phase(out.vectors.col(k));
  return out;
}

Matrix herm_propagator(const Matrix& h, double t) {
  const EigenDecomposition e = herm_eig(h);
  Vector phases(e.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(Complex(0.0, -t * e.values(k)));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

Matrix psd_sqrt(const Matrix& m) {
  const EigenDecomposition e = herm_eig(m);
  const double top = std::max(e.values.cwiseAbs().maxCoeff(), 0.0);
  RealVector roots(e.values.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k)
    roots(k) = e.values(k) > 1e-13 * top ? std::sqrt(e.values(k)) : 0.0;
  return e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

double fidelity(const DensityOp& rho, const DensityOp& sigma) {
  if (rho.matrix().rows() != sigma.matrix().rows()) throw InvalidArgument("fidelity: dimension mismatch");
  const double f = trace_norm(psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix()));
  return std::clamp(f, 0.0, 1.0);
}

Matrix nonnegative_projector(const Matrix& delta) {
  const EigenDecomposition e = herm_eig(delta);
  const double scale = std::max(e.values.cwiseAbs().maxCoeff(), 1.0);
  Matrix p = Matrix::Zero(delta.rows(), delta.cols());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    if (e.values(k) >= -1e-12 * scale) p += e.vectors.col(k) * e.vectors.col(k).adjoint();
  return p;
}

HelstromResult helstrom(const DensityOp& rho0, const DensityOp& rho1) {
  if (rho0.matrix().rows() != rho1.matrix().rows()) throw InvalidArgument("helstrom: dimension mismatch");
  const Matrix delta = rho0.matrix() - rho1.matrix();
  const EigenDecomposition e = herm_eig(delta);
  const double distance = std::min(0.5 * e.values.cwiseAbs().sum(), 1.0);
  return {distance, Projector(nonnegative_projector(delta), rho0.dims())};
}

}  // namespace splitlab
