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

#ifndef HOSL_EIGEN_SYM_HPP_
#define HOSL_EIGEN_SYM_HPP_

#include <vector>

#include "hosl/matrix.hpp"

namespace hosl {

// Full spectral decomposition of a symmetric matrix.
//   m = eigenvectors * diag(eigenvalues) * eigenvectors^T
// eigenvalues are sorted descending; eigenvectors are orthonormal columns,
// column j paired with eigenvalues[j].
struct SymmetricEigen {
  std::vector<double> eigenvalues;
  DenseMatrix eigenvectors;
};

// Householder tridiagonalization followed by QL with implicit shifts.
// Preconditions: m square, symmetric within tol::kSymmetryCheck.
// Throws InvalidInput on a violated precondition and NumericError (with the
// iteration count) if any eigenvalue fails to converge within 30 sweeps.
SymmetricEigen sym_eigen(const DenseMatrix& m);

// Sum of singular values; for symmetric input this is sum |lambda_i|.
// Requires a square symmetric matrix (same gate as sym_eigen).
double nuclear_norm(const DenseMatrix& m);

}  // namespace hosl

#endif  // HOSL_EIGEN_SYM_HPP_
