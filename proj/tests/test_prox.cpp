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

#include <doctest.h>

#include <cmath>

#include "hosl/eigen_sym.hpp"
#include "hosl/error.hpp"
#include "hosl/matrix.hpp"
#include "support/reference_eigen.hpp"
#include "support/test_util.hpp"

using hosl::DenseMatrix;

TEST_CASE("soft threshold on scalars") {
  const DenseMatrix m = DenseMatrix::from_rows({{0.5, -0.1}});
  const DenseMatrix out = hosl::soft_threshold(m, 0.2);
  CHECK(out(0, 0) == doctest::Approx(0.3));
  CHECK(out(0, 1) == 0.0);
}

TEST_CASE("soft threshold with alpha 0 is the identity") {
  const DenseMatrix m = hosl::testing::random_matrix(4, 4, 5);
  const DenseMatrix out = hosl::soft_threshold(m, 0.0);
  CHECK(hosl::testing::max_entry_diff(out, m) == 0.0);
}

TEST_CASE("soft threshold rejects negative alpha and shrinks the l1 norm") {
  const DenseMatrix m = hosl::testing::random_matrix(4, 4, 6);
  CHECK_THROWS_AS(hosl::soft_threshold(m, -0.1), hosl::InvalidInput);
  CHECK(hosl::l1_norm(hosl::soft_threshold(m, 0.3)) <= hosl::l1_norm(m));
}

TEST_CASE("nuclear prox of the identity shrinks the spectrum") {
  const DenseMatrix out = hosl::prox_nuclear(DenseMatrix::identity(2), 0.3);
  CHECK(out(0, 0) == doctest::Approx(0.7));
  CHECK(out(1, 1) == doctest::Approx(0.7));
  CHECK(out(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("nuclear prox with beta 0 reproduces the input") {
  const DenseMatrix m = hosl::testing::random_symmetric(6, 17);
  const DenseMatrix out = hosl::prox_nuclear(m, 0.0);
  CHECK(hosl::testing::max_entry_diff(out, m) < 1e-8);
}

TEST_CASE("nuclear prox zeroes a fully dominated spectrum") {
  const DenseMatrix m = hosl::testing::random_symmetric(5, 23, 0.1);
  const hosl::SymmetricEigen eig = hosl::sym_eigen(m);
  double top = 0.0;
  for (double lambda : eig.eigenvalues) top = std::max(top, std::abs(lambda));
  const DenseMatrix out = hosl::prox_nuclear(m, top + 0.01);
  for (double v : out.data()) CHECK(v == 0.0);
}

TEST_CASE("nuclear prox matches the brute-force reference construction") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 2 + seed % 8;
    const DenseMatrix m = hosl::testing::random_symmetric(n, seed, 2.0);
    const double beta = 0.1 + 0.05 * static_cast<double>(seed % 5);
    const DenseMatrix ours = hosl::prox_nuclear(m, beta);
    const DenseMatrix ref = hosl::testing::jacobi_prox_nuclear(m, beta);
    CHECK(hosl::testing::max_entry_diff(ours, ref) < 1e-8);
    CHECK(hosl::nuclear_norm(ours) <= hosl::nuclear_norm(m) + 1e-10);
    CHECK(hosl::max_asymmetry(ours) == 0.0);
  }
}

TEST_CASE("both proximal maps are non-expansive") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 3 + seed % 6;
    const DenseMatrix a = hosl::testing::random_symmetric(n, seed, 2.0);
    const DenseMatrix b = hosl::testing::random_symmetric(n, seed + 777, 2.0);
    const double dist = hosl::frobenius_norm(a - b);

    const double soft_dist = hosl::frobenius_norm(
        hosl::soft_threshold(a, 0.4) - hosl::soft_threshold(b, 0.4));
    CHECK(soft_dist <= dist + 1e-12);

    const double nuc_dist = hosl::frobenius_norm(hosl::prox_nuclear(a, 0.4) -
                                                 hosl::prox_nuclear(b, 0.4));
    CHECK(nuc_dist <= dist + 1e-9);
  }
}

TEST_CASE("nuclear prox rejects negative beta") {
  CHECK_THROWS_AS(hosl::prox_nuclear(DenseMatrix::identity(2), -1.0),
                  hosl::InvalidInput);
}
