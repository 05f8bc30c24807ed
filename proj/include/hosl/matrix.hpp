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

#ifndef HOSL_MATRIX_HPP_
#define HOSL_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hosl {

// Dense real matrix, row-major. The single carrier for adjacencies, learned
// structures, features and GNN weights.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Takes ownership of `data`; throws InvalidInput if rows*cols != data.size().
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  DenseMatrix transposed() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double scalar);

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    a += b;
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    a -= b;
    return a;
  }
  friend DenseMatrix operator*(DenseMatrix a, double s) {
    a *= s;
    return a;
  }
  friend DenseMatrix operator*(double s, DenseMatrix a) {
    a *= s;
    return a;
  }

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Standard product; throws InvalidInput on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& m);
double l1_norm(const DenseMatrix& m);
// Throws InvalidInput for non-square input.
double trace(const DenseMatrix& m);

// max_ij |m(i,j) - m(j,i)|; 0 for empty. Throws for non-square input.
double max_asymmetry(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);
bool all_finite(const DenseMatrix& m);
// Throws NumericError naming `what` if any entry is NaN/Inf.
void require_finite(const DenseMatrix& m, const char* what);

// Exact mirror of the mean of m and m^T: the result is bitwise symmetric.
DenseMatrix symmetrized(const DenseMatrix& m);

}  // namespace hosl

#endif  // HOSL_MATRIX_HPP_
