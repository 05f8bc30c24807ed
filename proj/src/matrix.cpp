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

#include "hosl/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hosl/error.hpp"

namespace hosl {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ * cols_ != data_.size()) {
    throw InvalidInput("DenseMatrix: rows*cols != data length (" +
                       std::to_string(rows_) + "x" + std::to_string(cols_) +
                       " vs " + std::to_string(data_.size()) + ")");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c, 0.0);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw InvalidInput("DenseMatrix::from_rows: ragged rows");
    }
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (!same_shape(other)) throw InvalidInput("matrix +=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (!same_shape(other)) throw InvalidInput("matrix -=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double scalar) {
  for (double& v : data_) v *= scalar;
  return *this;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidInput("matmul: inner dimensions differ (" +
                       std::to_string(a.cols()) + " vs " +
                       std::to_string(b.rows()) + ")");
  }
  DenseMatrix out(a.rows(), b.cols(), 0.0);
  // i-k-j order keeps the inner loop contiguous in both b and out.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const std::size_t n = b.cols();
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

double frobenius_norm(const DenseMatrix& m) {
  double sum = 0.0;
  for (double v : m.data()) sum += v * v;
  return std::sqrt(sum);
}

double l1_norm(const DenseMatrix& m) {
  double sum = 0.0;
  for (double v : m.data()) sum += std::abs(v);
  return sum;
}

double trace(const DenseMatrix& m) {
  if (!m.is_square()) throw InvalidInput("trace: matrix is not square");
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, i);
  return sum;
}

double max_asymmetry(const DenseMatrix& m) {
  if (!m.is_square()) throw InvalidInput("max_asymmetry: matrix is not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    }
  }
  return worst;
}

double max_abs(const DenseMatrix& m) {
  double worst = 0.0;
  for (double v : m.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

bool all_finite(const DenseMatrix& m) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_finite(const DenseMatrix& m, const char* what) {
  if (!all_finite(m)) {
    throw NumericError(std::string(what) + ": non-finite entries");
  }
}

DenseMatrix symmetrized(const DenseMatrix& m) {
  if (!m.is_square()) throw InvalidInput("symmetrized: matrix is not square");
  DenseMatrix out(m.rows(), m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace hosl
