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

#include "splitlab/random.hpp"

#include <cmath>

namespace splitlab {

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

Matrix random_unitary(int d, Rng& rng) {
  const Matrix g = random_gaussian(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

Matrix random_isometry(int d, int k, Rng& rng) { return random_unitary(d, rng).leftCols(k); }

Matrix random_hermitian(int d, Rng& rng) {
  const Matrix g = random_gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_hermitian_unit(int d, Rng& rng, double norm) {
  Matrix h = random_hermitian(d, rng);
  return h * (norm / operator_norm(h));
}

Ket random_ket(const Dims& dims, Rng& rng) {
  return Ket::normalized(random_gaussian(total_dim(dims), 1, rng).col(0), dims);
}

Matrix random_projector(int d, int rank, Rng& rng) {
  const Matrix v = random_isometry(d, rank, rng);
  return v * v.adjoint();
}

int random_int(int lo, int hi, Rng& rng) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng);
}

}  // namespace splitlab
