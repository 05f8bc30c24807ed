// Copyright 2026 The HOSL Authors.
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

#include "hosl/prox.hpp"

#include <cmath>
#include <cstddef>

#include "hosl/eigen_sym.hpp"
#include "hosl/error.hpp"

namespace hosl {

DenseMatrix soft_threshold(const DenseMatrix& m, double alpha) {
  if (!(alpha >= 0.0)) {
    throw InvalidInput("soft_threshold: alpha must be nonnegative");
  }
  DenseMatrix out = m;
  for (double& v : out.data()) {
    const double mag = std::abs(v) - alpha;
    v = mag > 0.0 ? (v < 0.0 ? -mag : mag) : 0.0;
  }
  return out;
}

DenseMatrix prox_nuclear(const DenseMatrix& m, double beta) {
  if (!(beta >= 0.0)) {
    throw InvalidInput("prox_nuclear: beta must be nonnegative");
  }
  const SymmetricEigen eig = sym_eigen(m);
  const std::size_t n = m.rows();

  // Q * diag(shrunk) * Q^T, assembled as a rank-sum to skip zeroed modes.
  DenseMatrix out(n, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double lambda = eig.eigenvalues[j];
    const double mag = std::abs(lambda) - beta;
    if (mag <= 0.0) continue;
    const double shrunk = lambda < 0.0 ? -mag : mag;
    for (std::size_t r = 0; r < n; ++r) {
      const double qr = eig.eigenvectors(r, j) * shrunk;
      if (qr == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        out(r, c) += qr * eig.eigenvectors(c, j);
      }
    }
  }
  return symmetrized(out);
}

}  // namespace hosl
