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

#ifndef HOSL_TESTS_SUPPORT_FINITE_DIFF_HPP_
#define HOSL_TESTS_SUPPORT_FINITE_DIFF_HPP_

#include <cmath>
#include <functional>

#include "hosl/matrix.hpp"

namespace hosl::testing {

inline constexpr double kFdStep = 1e-5;
inline constexpr double kFdRelTol = 1e-4;

// Central difference of `f` in the (i,j) coordinate of `at`.
inline double central_difference(
    const std::function<double(const DenseMatrix&)>& f, const DenseMatrix& at,
    std::size_t i, std::size_t j, double step = kFdStep) {
  DenseMatrix plus = at;
  DenseMatrix minus = at;
  plus(i, j) += step;
  minus(i, j) -= step;
  return (f(plus) - f(minus)) / (2.0 * step);
}

// Relative agreement with an absolute floor for near-zero gradients.
inline bool gradients_agree(double analytic, double numeric,
                            double rel_tol = kFdRelTol) {
  const double diff = std::abs(analytic - numeric);
  const double scale = std::max(std::abs(analytic), std::abs(numeric));
  return diff <= rel_tol * scale || diff <= 1e-8;
}

}  // namespace hosl::testing

#endif  // HOSL_TESTS_SUPPORT_FINITE_DIFF_HPP_
