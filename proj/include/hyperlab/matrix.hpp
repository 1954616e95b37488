#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "hyperlab/error.hpp"

namespace hyperlab {

// Small dense row-major matrix over any field-like scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix b(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] + b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] - b.data_[k];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.data_) v = s * v;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) {
        T acc(0);
        for (size_t k = 0; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        c(i, j) = acc;
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Fraction-free is unnecessary at these sizes; plain elimination with
  // pivot search on nonzero entries.
  T determinant() const {
    if (rows_ != cols_) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
    Matrix m = *this;
    T det(1);
    for (size_t col = 0; col < rows_; ++col) {
      size_t piv = col;
      while (piv < rows_ && m(piv, col) == T(0)) ++piv;
      if (piv == rows_) return T(0);
      if (piv != col) {
        for (size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(col, j));
        det = T(0) - det;
      }
      det = det * m(col, col);
      for (size_t r = col + 1; r < rows_; ++r) {
        const T f = m(r, col) / m(col, col);
        for (size_t j = col; j < cols_; ++j) m(r, j) = m(r, j) - f * m(col, j);
      }
    }
    return det;
  }

 private:
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
    }
  }

  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> data_;
};

using MatrixC = Matrix<std::complex<double>>;

inline double max_abs_diff(const MatrixC& a, const MatrixC& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  }
  double m = 0.0;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace hyperlab
