#pragma once

// Dense exact matrices and vectors over Rational, plus the handful of
// elimination routines (inverse, rank, linear solve) the rest of the library
// needs. Storage is row-major; element access is 0-based. Index labels that
// refer to LCP variables (bases, complements) are 1-based and live in model.hpp.

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plcp/rational.hpp"

namespace plcp {

using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows) {
    if (rows.empty()) return {};
    RatMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static RatMatrix column(const RatVector& v) {
    RatMatrix m(v.size(), 1);
    for (std::size_t r = 0; r < v.size(); ++r) m(r, 0) = v[r];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  RatVector row(std::size_t r) const {
    return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  RatVector col(std::size_t c) const {
    RatVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const RatMatrix& o) const = default;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    RatMatrix out(a.rows_, b.cols_);
    Rational tmp;
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& ark = a(r, k);
        if (ark == 0) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          tmp = ark * b(k, c);
          out(r, c) += tmp;
        }
      }
    return out;
  }

  friend RatVector operator*(const RatMatrix& a, const RatVector& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    RatVector out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c)
        if (a(r, c) != 0) out[r] += a(r, c) * x[c];
    return out;
  }

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend RatMatrix operator-(RatMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend RatMatrix operator*(const Rational& s, RatMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline RatVector operator+(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum dimension mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

inline RatVector operator-(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector difference dimension mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

inline RatVector operator*(const Rational& s, RatVector a) {
  for (auto& x : a) x *= s;
  return a;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot product dimension mismatch");
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0) s += a[k] * b[k];
  return s;
}

inline bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Exact inverse via Gauss-Jordan elimination; nullopt when singular.
inline std::optional<RatMatrix> invert(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  Rational factor;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const Rational p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (a(col, c) != 0) a(r, c) -= factor * a(col, c);
        if (inv(col, c) != 0) inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

/// Row echelon form in place; returns the pivot column of each pivot row.
inline std::vector<std::size_t> row_echelon(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational factor;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    for (std::size_t r = row + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      factor = a(r, col) / a(row, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (a(row, c) != 0) a(r, c) -= factor * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return row_echelon(a).size();
}

inline Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  Rational det = 1;
  Rational factor;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c)
        if (a(col, c) != 0) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

/// Some exact solution of a·x = b (free variables set to zero), or nullopt
/// when the system is inconsistent.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: row count does not match rhs");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = row_echelon(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t col = pivots[k];
    Rational s = aug(k, a.cols());
    for (std::size_t c = col + 1; c < a.cols(); ++c)
      if (aug(k, c) != 0) s -= aug(k, c) * x[c];
    x[col] = s / aug(k, col);
  }
  return x;
}

/// Rows selected by index, in the given order.
inline RatMatrix select_rows(const RatMatrix& m, const std::vector<std::size_t>& rows) {
  RatMatrix out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(rows[r], c);
  return out;
}

}  // namespace plcp
