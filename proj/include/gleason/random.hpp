// Copyright 2026 The Gleason Frames Authors
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

#include "gleason/operator_space.hpp"

// Seeded ensembles. Every generator takes the engine explicitly; there is no
// global random state.

namespace gleason {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline VectorXc gaussian_vector(int d, Rng& rng) {
  VectorXc v(d);
  for (int j = 0; j < d; ++j) v(j) = complex_gaussian(rng);
  return v;
}

/// Complex Ginibre matrix with i.i.d. standard complex Gaussian entries.
inline MatrixXc ginibre(int d, Rng& rng) {
  MatrixXc m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j, k) = complex_gaussian(rng);
  return m;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
inline MatrixXc random_unitary(int d, Rng& rng) {
  const MatrixXc g = ginibre(d, rng);
  Eigen::HouseholderQR<MatrixXc> qr(g);
  MatrixXc q = qr.householderQ() * MatrixXc::Identity(d, d);
  const MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// (G + G^dagger) / 2 for Ginibre G.
inline HermitianOperator random_hermitian(int d, Rng& rng) {
  return HermitianOperator::hermitian_part(ginibre(d, rng));
}

}  // namespace gleason
