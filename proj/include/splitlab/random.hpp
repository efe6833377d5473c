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

#include <cstdint>
#include <random>

#include "splitlab/operator_core.hpp"

namespace splitlab {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix random_gaussian(int rows, int cols, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase correction).
Matrix random_unitary(int d, Rng& rng);

/// Haar-random isometry: the first `k` columns of a random unitary.
Matrix random_isometry(int d, int k, Rng& rng);

/// GUE sample (G + G^dagger) / 2.
Matrix random_hermitian(int d, Rng& rng);

/// Random Hermitian with operator norm exactly `norm`.
Matrix random_hermitian_unit(int d, Rng& rng, double norm = 1.0);

/// Haar-random pure state.
Ket random_ket(const Dims& dims, Rng& rng);

/// Projector onto a Haar-random subspace of the given rank.
Matrix random_projector(int d, int rank, Rng& rng);

/// Uniform integer in [lo, hi].
int random_int(int lo, int hi, Rng& rng);

}  // namespace splitlab
