// Copyright 2026 The VISER Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VISER_MATRIX_H_
#define VISER_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace viser {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  // Builds from nested rows; all rows must have equal length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }

  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<const double> data() const { return data_; }

  Matrix Transposed() const;
  Matrix Scaled(double factor) const;
  Matrix Shifted(double offset) const;
  Matrix Negated() const { return Scaled(-1.0); }

  // Largest |entry|; 0 for an empty matrix.
  double MaxAbs() const;
  bool AllFinite() const;

  std::vector<std::vector<double>> ToRows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// alpha * a + beta * b.
Matrix Combine(double alpha, const Matrix& a, double beta, const Matrix& b);

}  // namespace viser

#endif  // VISER_MATRIX_H_
