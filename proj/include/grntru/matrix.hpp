#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "grntru/arith.hpp"

namespace grntru {

// Dense row-major matrix. Rows are the lattice generators wherever a matrix is
// used as a basis.
template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape mismatch");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = checked_add(a(i, j), b(i, j));
  return out;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape mismatch");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = checked_sub(a(i, j), b(i, j));
  return out;
}

inline IntMatrix operator*(Int s, const IntMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = checked_mul(s, a(i, j));
  return out;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += static_cast<__int128>(a(i, k)) * b(k, j);
      out(i, j) = narrow(acc);
    }
  return out;
}

/// Row vector times matrix.
inline IntVector operator*(std::span<const Int> v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DimensionError("vector-matrix product shape mismatch");
  std::vector<__int128> acc(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) acc[j] += static_cast<__int128>(v[i]) * r[j];
  }
  IntVector out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = narrow(acc[j]);
  return out;
}

inline IntVector operator*(const IntVector& v, const IntMatrix& m) { return std::span<const Int>(v) * m; }

/// Rank of m over the field with p elements (p prime).
inline std::size_t rank_mod_prime(const IntMatrix& m, Int p) {
  IntMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = mod_floor(m(i, j), p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(piv, rank);
    Int inv = inverse_mod(a(rank, col), p);
    for (std::size_t j = col; j < a.cols(); ++j) a(rank, j) = a(rank, j) * inv % p;
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      Int f = a(i, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = mod_floor(a(i, j) - f * a(rank, j), p);
    }
    ++rank;
  }
  return rank;
}

/// Inverse of a square matrix over the field with p elements, by Gauss-Jordan.
/// Throws NotInvertible when the matrix is singular mod p.
inline IntMatrix inverse_mod_prime(const IntMatrix& m, Int p) {
  if (!m.square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = mod_floor(m(i, j), p);
    a(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw NotInvertible("matrix is singular modulo " + std::to_string(p));
    a.swap_rows(piv, col);
    Int inv = inverse_mod(a(col, col), p);
    for (std::size_t j = 0; j < 2 * n; ++j) a(col, j) = a(col, j) * inv % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      Int f = a(i, col);
      if (f == 0) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) = mod_floor(a(i, j) - f * a(col, j), p);
    }
  }
  return a.block(0, n, n, n);
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

} // namespace grntru
