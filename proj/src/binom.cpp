#include "logvvmf/binom.hpp"

namespace logvvmf {

PolyMatrix binom_matrix(int m) {
  PolyMatrix out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      int k = i - j;
      PolyQ entry = binom_poly(k).shifted(make_rat(k - 1));  // binom(x+k-1, k)
      if (k % 2 == 1) entry = -entry;
      out(i, j) = entry;
    }
  return out;
}

PolyMatrix binom_matrix_inverse(int m) {
  PolyMatrix out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) out(i, j) = binom_poly(i - j);
  return out;
}

PolyMatrix modified_jordan_unit(int m) {
  PolyMatrix out(m, m);
  for (int i = 0; i < m; ++i) {
    out(i, i) = PolyQ(1);
    if (i + 1 < m) out(i + 1, i) = PolyQ(1);
  }
  return out;
}

PolyMatrix shift_x(const PolyMatrix& m) {
  PolyMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).shifted(Rat(1));
  return out;
}

CMatrix binom_matrix_eval(int m, const Cplx& x) {
  PolyMatrix p = binom_matrix(m);
  CMatrix out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = p(i, j).evaluate<Cplx>(x);
  return out;
}

CMatrix binom_matrix_inverse_eval(int m, const Cplx& x) {
  // binom(x, i-j) evaluated directly
  CMatrix out(m, m);
  std::vector<Cplx> binoms(m);
  Cplx acc(1);
  binoms[0] = acc;
  for (int k = 1; k < m; ++k) {
    acc *= (x - Cplx(k - 1)) / Cplx(k);
    binoms[k] = acc;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) out(i, j) = binoms[i - j];
  return out;
}

}  // namespace logvvmf
