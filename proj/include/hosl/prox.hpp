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

#ifndef HOSL_PROX_HPP_
#define HOSL_PROX_HPP_

#include "hosl/matrix.hpp"

namespace hosl {

// Elementwise sgn(x) * max(|x| - alpha, 0). alpha must be >= 0.
DenseMatrix soft_threshold(const DenseMatrix& m, double alpha);

// Proximal operator of the nuclear norm for a symmetric matrix: the spectrum
// is soft-thresholded by beta, |lambda_i| -> (|lambda_i| - beta)_+ keeping
// signs, and the matrix reassembled. Result is exactly symmetric.
DenseMatrix prox_nuclear(const DenseMatrix& m, double beta);

}  // namespace hosl

#endif  // HOSL_PROX_HPP_
