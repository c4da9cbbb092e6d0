#pragma once

// Exact univariate polynomials over Q and the binomial-coefficient machinery:
// the matrices B_m(x), their inverses, and expansion helpers for working in
// the binomial basis binom(x, j).

#include "logvvmf/linalg.hpp"
#include "logvvmf/numeric.hpp"

#include <vector>

namespace logvvmf {

class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(long v) { if (v) coeffs_.push_back(make_rat(v)); }  // NOLINT
  PolyQ(Rat v) { if (v != 0) coeffs_.push_back(std::move(v)); }  // NOLINT
  explicit PolyQ(std::vector<Rat> c) : coeffs_(std::move(c)) { trim(); }

  static PolyQ x() { return PolyQ(std::vector<Rat>{Rat(0), Rat(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Rat(0);
  }

  PolyQ operator-() const {
    PolyQ r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  PolyQ& operator+=(const PolyQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  PolyQ& operator-=(const PolyQ& o) { return *this += -o; }
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { a += b; return a; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { a -= b; return a; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolyQ(std::move(c));
  }
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

  // p(x + s)
  PolyQ shifted(const Rat& s) const {
    PolyQ shift_factor(std::vector<Rat>{s, Rat(1)});
    PolyQ r;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * shift_factor + PolyQ(coeffs_[i]);
    return r;
  }

  PolyQ derivative() const {
    if (coeffs_.size() <= 1) return PolyQ();
    std::vector<Rat> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * make_rat(static_cast<long>(i));
    return PolyQ(std::move(c));
  }

  template <class T>
  T evaluate(const T& x) const {
    T r = T(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + field_traits<T>::from_rat(coeffs_[i]);
    return r;
  }
  Rat evaluate_rat(const Rat& x) const {
    Rat r(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
    return r;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rat> coeffs_;  // power basis
};

// binom(x, k) as an exact polynomial: x(x-1)...(x-k+1)/k!; 1 for k = 0,
// 0 for k < 0.
inline PolyQ binom_poly(int k) {
  if (k < 0) return PolyQ();
  PolyQ r(1);
  Rat fact(1);
  for (int t = 0; t < k; ++t) {
    r = r * PolyQ(std::vector<Rat>{make_rat(-t), Rat(1)});
    fact *= (t + 1);
  }
  std::vector<Rat> c = r.coeffs();
  for (auto& v : c) v /= fact;
  return PolyQ(std::move(c));
}

// binom(s, k) for rational s, exact.
inline Rat binom_rat(const Rat& s, int k) {
  if (k < 0) return Rat(0);
  Rat num(1), den(1);
  for (int t = 0; t < k; ++t) {
    num *= (s - t);
    den *= (t + 1);
  }
  Rat q = num / den;
  q.canonicalize();
  return q;
}

// Coefficients of p in the binomial basis, via forward differences at
// x = 0, 1, ..., deg(p): p = sum_j (Delta^j p)(0) binom(x, j). Exact.
inline std::vector<Rat> power_to_binomial(const PolyQ& p) {
  int d = std::max(p.degree(), 0);
  std::vector<Rat> vals(d + 1);
  for (int t = 0; t <= d; ++t) vals[t] = p.evaluate_rat(make_rat(t));
  std::vector<Rat> out(d + 1);
  for (int j = 0; j <= d; ++j) {
    out[j] = vals[0];
    for (int t = 0; t + 1 < static_cast<int>(vals.size()); ++t) vals[t] = vals[t + 1] - vals[t];
    vals.pop_back();
  }
  return out;
}

// binom(x, a) binom(x, b) = sum_c K[c] binom(x, c); K has integer entries.
inline std::vector<Rat> binom_product_expansion(int a, int b) {
  return power_to_binomial(binom_poly(a) * binom_poly(b));
}

// binom(x + s, k) = sum_i binom(s, k - i) binom(x, i)  (Vandermonde).
inline std::vector<Rat> binom_shift_expansion(const Rat& s, int k) {
  std::vector<Rat> out(k + 1);
  for (int i = 0; i <= k; ++i) out[i] = binom_rat(s, k - i);
  return out;
}

// d/dx binom(x, j) in the binomial basis.
inline std::vector<Rat> binom_derivative_expansion(int j) {
  return power_to_binomial(binom_poly(j).derivative());
}

using PolyMatrix = Matrix<PolyQ>;

// B_m(x)_{ij} = (-1)^{i-j} binom(x+i-j-1, i-j), lower triangular Toeplitz.
PolyMatrix binom_matrix(int m);
// B_m(x)^{-1}_{ij} = binom(x, i-j).
PolyMatrix binom_matrix_inverse(int m);
// J_{m,1}: ones on the diagonal and first subdiagonal.
PolyMatrix modified_jordan_unit(int m);
// entrywise p(x) -> p(x+1)
PolyMatrix shift_x(const PolyMatrix& m);

// B_m(x) evaluated at a complex point (and its inverse).
CMatrix binom_matrix_eval(int m, const Cplx& x);
CMatrix binom_matrix_inverse_eval(int m, const Cplx& x);

}  // namespace logvvmf
