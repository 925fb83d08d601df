#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace icr {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    if (cols.empty()) return {};
    Matrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (cols[j].size() != m.rows_) throw std::invalid_argument("ragged column list");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  // Convenience for literals in tests: rows of longs.
  static Matrix rows_of(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<T>> out;
    for (const auto& r : rows) {
      std::vector<T> row;
      for (long v : r) row.emplace_back(v);
      out.push_back(std::move(row));
    }
    return from_rows(out);
  }

  static Matrix columns_of(std::initializer_list<std::initializer_list<long>> cols) {
    return rows_of(cols).transposed();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void set_column(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Columns listed in `keep`, in that order.
  Matrix select_columns(const std::vector<std::size_t>& keep) const {
    Matrix m(rows_, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, keep[j]);
    return m;
  }

  Matrix without_column(std::size_t drop) const {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != drop) keep.push_back(j);
    return select_columns(keep);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

IntVector int_vector(std::initializer_list<long> values);
RatVector to_rational(const IntVector& v);
RatMatrix to_rational(const IntMatrix& m);

// Throws InvalidArgument when some entry is not an integer.
IntVector to_integral(const RatVector& v);
IntMatrix to_integral(const RatMatrix& m);
bool is_integral(const RatVector& v);
bool is_integral(const RatMatrix& m);

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
RatVector operator*(const RatMatrix& a, const RatVector& v);
RatVector operator*(const RatMatrix& a, const IntVector& v);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Int& c, const IntVector& v);
RatVector operator-(const RatVector& a, const RatVector& b);

Int dot(const IntVector& a, const IntVector& b);
Rat dot(const RatVector& a, const RatVector& b);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

// Fractional part in [0, 1).
Rat frac(const Rat& x);
Int floor_of(const Rat& x);
Int gcd_of(const IntVector& v);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

}  // namespace icr
