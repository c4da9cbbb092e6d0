#pragma once

// Small dense matrices over the project scalar types, with the handful of
// decompositions the toolkit needs (Gauss, Householder least squares, pivoted
// QR rank/kernel). Hand-rolled so the same code runs over MPFR complex and
// exact Gaussian rationals.

#include "logvvmf/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace logvvmf {

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}
  Matrix(std::size_t r, std::size_t c, const T& fill) : rows_(r), cols_(c), data_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const {
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Matrix scaled(const T& s) const {
    Matrix out = *this;
    for (auto& v : out.data_) v = v * s;
    return out;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  std::vector<T>& flat() { return data_; }
  const std::vector<T>& flat() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using CMatrix = Matrix<Cplx>;
using QMatrix = Matrix<GaussRat>;

// max |entry|
inline Real max_abs(const CMatrix& m) {
  Real best = 0;
  for (const auto& v : m.flat()) {
    Real a = abs(v);
    if (a > best) best = a;
  }
  return best;
}

inline CMatrix to_cmatrix(const QMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_cplx(m(i, j));
  return out;
}

// Gauss-Jordan inverse with partial pivoting (largest |pivot| for Cplx,
// first nonzero for exact fields). Throws on singular input.
template <class T>
Matrix<T> inverse(Matrix<T> a) {
  using traits = field_traits<T>;
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    if constexpr (traits::exact) {
      while (piv < n && traits::is_zero(a(piv, col))) ++piv;
      if (piv == n) throw std::domain_error("inverse: singular matrix");
    } else {
      Real best = traits::abs_value(a(col, col));
      for (std::size_t r = col + 1; r < n; ++r) {
        Real v = traits::abs_value(a(r, col));
        if (v > best) { best = v; piv = r; }
      }
      if (best.is_zero()) throw std::domain_error("inverse: singular matrix");
    }
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || traits::is_zero(a(r, col))) continue;
      T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Exact nullspace over a field: returns a basis as columns.
template <class T>
std::vector<std::vector<T>> nullspace_exact(Matrix<T> a) {
  static_assert(field_traits<T>::exact);
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && field_traits<T>::is_zero(a(piv, col))) ++piv;
    if (piv == m) continue;
    if (piv != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    T d = a(row, col);
    for (std::size_t j = col; j < n; ++j) a(row, j) = a(row, j) / d;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || field_traits<T>::is_zero(a(r, col))) continue;
      T f = a(r, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<T> v(n, T(0));
    v[freec] = T(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(r, freec);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Householder QR with optional column pivoting over Cplx.
struct QRResult {
  CMatrix r;                       // upper triangular (in the pivoted column order)
  std::vector<std::size_t> perm;   // column permutation
  std::vector<Real> rdiag_abs;     // |R_ii|, decreasing when pivoted
  CMatrix qtb;                     // Q^H applied to the right-hand sides
};

QRResult qr_factor(CMatrix a, CMatrix b, bool pivot);

// Least squares min |A x - B| columnwise; also reports the residual norms.
struct LstSqResult {
  CMatrix x;
  std::vector<Real> residual_norm;  // per right-hand-side column
  Real cond_estimate;               // |R_00|/|R_kk| from the pivoted factorization
};

LstSqResult least_squares(const CMatrix& a, const CMatrix& b);

// Numeric rank with threshold tol * max|R_ii|; kernel basis as columns.
struct RankResult {
  std::size_t rank;
  std::vector<std::vector<Cplx>> kernel;
  Real smallest_kept, largest;
  std::vector<Real> diag_abs;  // |R_ii| in pivot order
};

RankResult rank_and_kernel(const CMatrix& a, const Real& rel_tol);

}  // namespace logvvmf
