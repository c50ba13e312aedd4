#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabcalc {

using Rational = mpq_class;
using Integer = mpz_class;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over an exact scalar type (mpq_class / mpz_class).
/// 0×n and n×0 shapes are legal.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    for (auto& x : data_) x = 0;
  }
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix column(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  static Matrix unit_column(std::size_t n, std::size_t k) {
    Matrix m(n, 1);
    m(k, 0) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (sgn(x) != 0) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }
  Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < idx.size(); ++k) m(r, k) = (*this)(r, idx[k]);
    return m;
  }
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t c = 0; c < cols_; ++c) m(k, c) = (*this)(idx[k], c);
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("set_block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_)
      throw DimensionError("matrix product " + shape() + " * " + b.shape());
    Matrix out(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(k, j);
          if (sgn(y) != 0) out(i, j) += a * y;
        }
      }
    return out;
  }
  Matrix operator+(const Matrix& b) const {
    check_same(b, "sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  Matrix operator-(const Matrix& b) const {
    check_same(b, "difference");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }
  Matrix operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  Matrix& operator+=(const Matrix& b) {
    check_same(b, "sum");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
    return *this;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  bool operator==(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (data_[i] != b.data_[i]) return false;
    return true;
  }

  static Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows_if_empty = 0) {
    std::size_t r = parts.empty() ? rows_if_empty : parts.front().rows_;
    std::size_t c = 0;
    for (const auto& p : parts) {
      if (p.rows_ != r) throw DimensionError("hstack row mismatch");
      c += p.cols_;
    }
    Matrix out(r, c);
    std::size_t off = 0;
    for (const auto& p : parts) {
      out.set_block(0, off, p);
      off += p.cols_;
    }
    return out;
  }
  static Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols_if_empty = 0) {
    std::size_t c = parts.empty() ? cols_if_empty : parts.front().cols_;
    std::size_t r = 0;
    for (const auto& p : parts) {
      if (p.cols_ != c) throw DimensionError("vstack column mismatch");
      r += p.rows_;
    }
    Matrix out(r, c);
    std::size_t off = 0;
    for (const auto& p : parts) {
      out.set_block(off, 0, p);
      off += p.rows_;
    }
    return out;
  }
  static Matrix block_diagonal(const std::vector<Matrix>& parts) {
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      r += p.rows_;
      c += p.cols_;
    }
    Matrix out(r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& p : parts) {
      out.set_block(ro, co, p);
      ro += p.rows_;
      co += p.cols_;
    }
    return out;
  }
  /// Kronecker product; index of (i, k) is i * b.rows() + k.
  static Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        const T& s = a(i, j);
        if (sgn(s) == 0) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            if (sgn(b(k, l)) != 0) out(i * b.rows_ + k, j * b.cols_ + l) = s * b(k, l);
      }
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }
  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
      os << "]";
    }
    os << "]";
    return os.str();
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same(const Matrix& b, const char* what) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw DimensionError(std::string("matrix ") + what + " " + shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

QMatrix to_rational(const ZMatrix& m);

}  // namespace stabcalc
