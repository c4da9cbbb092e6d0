#include "logvvmf/linalg.hpp"

#include <cstddef>

namespace logvvmf {

namespace {

Real col_tail_norm2(const CMatrix& a, std::size_t col, std::size_t from_row) {
  Real s = 0;
  for (std::size_t i = from_row; i < a.rows(); ++i) s += norm(a(i, col));
  return s;
}

}  // namespace

QRResult qr_factor(CMatrix a, CMatrix b, bool pivot) {
  using boost::multiprecision::sqrt;
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t steps = std::min(m, n);
  QRResult out;
  out.perm.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.perm[j] = j;

  for (std::size_t k = 0; k < steps; ++k) {
    if (pivot) {
      std::size_t best = k;
      Real best_n = col_tail_norm2(a, k, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        Real nj = col_tail_norm2(a, j, k);
        if (nj > best_n) { best_n = nj; best = j; }
      }
      if (best != k) {
        for (std::size_t i = 0; i < m; ++i) std::swap(a(i, k), a(i, best));
        std::swap(out.perm[k], out.perm[best]);
      }
    }
    Real xnorm = sqrt(col_tail_norm2(a, k, k));
    if (xnorm.is_zero()) continue;
    // alpha = -phase(a_kk) * |x| keeps the reflection well conditioned
    Cplx akk = a(k, k);
    Cplx phase = abs(akk).is_zero() ? Cplx(1) : akk / Cplx(abs(akk));
    Cplx alpha = Cplx(-xnorm) * phase;
    std::vector<Cplx> v(m - k);
    v[0] = akk - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i - k] = a(i, k);
    Real vnorm2 = 0;
    for (const auto& vi : v) vnorm2 += norm(vi);
    if (!vnorm2.is_zero()) {
      Real two_over = Real(2) / vnorm2;
      auto reflect = [&](CMatrix& mat, std::size_t j) {
        Cplx w(0);
        for (std::size_t i = k; i < m; ++i) w += v[i - k].conj() * mat(i, j);
        w *= Cplx(two_over);
        for (std::size_t i = k; i < m; ++i) mat(i, j) -= w * v[i - k];
      };
      for (std::size_t j = k; j < n; ++j) reflect(a, j);
      for (std::size_t j = 0; j < b.cols(); ++j) reflect(b, j);
    }
    a(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) a(i, k) = Cplx(0);
  }
  out.rdiag_abs.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) out.rdiag_abs[k] = abs(a(k, k));
  out.r = std::move(a);
  out.qtb = std::move(b);
  return out;
}

LstSqResult least_squares(const CMatrix& a, const CMatrix& b) {
  using boost::multiprecision::sqrt;
  const std::size_t m = a.rows(), n = a.cols();
  QRResult qr = qr_factor(a, b, /*pivot=*/true);
  LstSqResult out;
  out.x = CMatrix(n, b.cols());
  Real small = qr.rdiag_abs.empty() ? Real(0) : qr.rdiag_abs.back();
  Real large = qr.rdiag_abs.empty() ? Real(0) : qr.rdiag_abs.front();
  out.cond_estimate = small.is_zero() ? Real(0) : Real(large / small);
  for (std::size_t col = 0; col < b.cols(); ++col) {
    std::vector<Cplx> y(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Cplx s = qr.qtb(ii, col);
      for (std::size_t j = ii + 1; j < n; ++j) s -= qr.r(ii, j) * y[j];
      y[ii] = s / qr.r(ii, ii);
    }
    for (std::size_t j = 0; j < n; ++j) out.x(qr.perm[j], col) = y[j];
    Real rn = 0;
    for (std::size_t i = n; i < m; ++i) rn += norm(qr.qtb(i, col));
    out.residual_norm.push_back(sqrt(rn));
  }
  return out;
}

RankResult rank_and_kernel(const CMatrix& a, const Real& rel_tol) {
  const std::size_t n = a.cols();
  QRResult qr = qr_factor(a, CMatrix(a.rows(), 0), /*pivot=*/true);
  RankResult out;
  out.largest = qr.rdiag_abs.empty() ? Real(0) : qr.rdiag_abs.front();
  Real thresh = out.largest * rel_tol;
  std::size_t r = 0;
  while (r < qr.rdiag_abs.size() && qr.rdiag_abs[r] > thresh) ++r;
  out.rank = r;
  out.smallest_kept = r ? qr.rdiag_abs[r - 1] : Real(0);
  out.diag_abs = qr.rdiag_abs;
  // kernel: solve R11 * y = -R12 per free column, identity on the free block
  for (std::size_t freec = r; freec < n; ++freec) {
    std::vector<Cplx> v(n, Cplx(0));
    std::vector<Cplx> y(r);
    for (std::size_t ii = r; ii-- > 0;) {
      Cplx s = -qr.r(ii, freec);
      for (std::size_t j = ii + 1; j < r; ++j) s -= qr.r(ii, j) * y[j];
      y[ii] = s / qr.r(ii, ii);
    }
    for (std::size_t j = 0; j < r; ++j) v[qr.perm[j]] = y[j];
    v[qr.perm[freec]] = Cplx(1);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

}  // namespace logvvmf
