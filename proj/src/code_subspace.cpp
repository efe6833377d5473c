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

#include "splitlab/code_subspace.hpp"

namespace splitlab {

CodeSubspace CodeSubspace::from_basis(const Matrix& basis, Dims dims) {
  if (basis.rows() != total_dim(dims)) throw InvalidArgument("CodeSubspace: basis length does not match dims");
  if (basis.cols() < 1) throw InvalidArgument("CodeSubspace: empty basis");
  const Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() > 1e-10)
    throw InvalidArgument("CodeSubspace: basis is not orthonormal");
  return CodeSubspace(basis, std::move(dims), std::numeric_limits<double>::infinity(), 0.0);
}

CodeSubspace CodeSubspace::from_projector(const Projector& p) {
  if (p.rank() < 1) throw InvalidArgument("CodeSubspace: projector of rank 0");
  const EigenDecomposition e = herm_eig(p.matrix());
  // Eigenvalues ascend, so the range is the last `rank` columns.
  return from_basis(e.vectors.rightCols(p.rank()), p.dims());
}

CodeSubspace CodeSubspace::full_space(const Dims& dims) {
  const int d = total_dim(dims);
  return CodeSubspace(Matrix::Identity(d, d), dims, std::numeric_limits<double>::infinity(), 0.0);
}

CodeSubspace ground_subspace(const Matrix& h0, const Dims& dims, double degeneracy_tol) {
  if (h0.rows() != total_dim(dims)) throw InvalidArgument("ground_subspace: size does not match dims");
  const EigenDecomposition e = herm_eig(h0);
  const double lo = e.values(0);
  const double spread = e.values(e.values.size() - 1) - lo;
  const double cut = degeneracy_tol * spread;
  int d = 0;
  while (d < e.values.size() && e.values(d) - lo <= cut) ++d;
  if (d == e.values.size() || spread <= 0.0)
    throw NumericalError("ground_subspace: no gap (the whole spectrum is degenerate)");
  const double gap = e.values(d) - lo;
  if (gap <= cut) throw NumericalError("ground_subspace: ill-separated ground cluster");
  return CodeSubspace(e.vectors.leftCols(d), dims, gap, lo);
}

Matrix project_onto_code(const CodeSubspace& code, const Matrix& v) {
  if (v.rows() != code.dim() || v.cols() != code.dim()) throw InvalidArgument("project_onto_code: dimension mismatch");
  return hermitian_part(code.basis().adjoint() * v * code.basis());
}

Matrix project_local_onto_code(const CodeSubspace& code, const Matrix& op, std::span<const int> support) {
  return hermitian_part(code.basis().adjoint() * apply_local(op, support, code.dims(), code.basis()));
}

}  // namespace splitlab
