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

#ifndef HOSL_TOLERANCES_HPP_
#define HOSL_TOLERANCES_HPP_

// All numeric tolerances live here so that the gates used by the library,
// the tests, and the acceptance suite cannot drift apart.

namespace hosl::tol {

// Input gates.
inline constexpr double kSymmetryCheck = 1e-10;   // sym_eigen / normalization input
inline constexpr double kGraphSymmetry = 1e-12;   // Graph adjacency and learned S

// Output contracts.
inline constexpr double kReconstruction = 1e-8;   // eigen reconstruction, prox oracle
inline constexpr double kOrthonormality = 1e-8;   // Q^T Q vs identity
inline constexpr double kEigenRange = 1e-8;       // spectrum of normalized adjacency
inline constexpr double kPowerContraction = 1e-10;
inline constexpr double kSpectralMapping = 1e-7;  // spectrum(A^k) vs spectrum(A)^k
inline constexpr double kPsd = 1e-10;             // smallest Laplacian eigenvalue

// Training.
inline constexpr double kLogClamp = 1e-12;        // cross-entropy log floor

}  // namespace hosl::tol

#endif  // HOSL_TOLERANCES_HPP_
