#include "logvvmf/classical.hpp"

#include "logvvmf/poincare.hpp"

namespace logvvmf {

namespace {

// sigma_k(n) by trial division; a deliberately separate arithmetic path
// from the sieve inside eisenstein()
Int sigma_naive(long n, int k) {
  Int s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    Int dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    s += dk;
  }
  return s;
}

Real rel_err(const Cplx& got, const Real& want) {
  return abs(got - Cplx(want)) / abs(Cplx(want));
}

}  // namespace

ClassicalCheck classical_check_e8(long N, long Nq, int threads) {
  ClassicalCheck out;
  out.name = "e8";
  out.N = N;
  out.Nq = Nq;
  out.tolerance = Real("1e-6");

  Representation triv = Representation::trivial();
  PoincareParams params;
  params.nu = {0};
  params.k = {8};
  params.N_trunc = N;
  ExtractionOptions opts;
  opts.Nq = Nq;
  opts.threads = threads;
  Extraction ex = extract_coefficients(triv, params, opts);
  const CSeries& series = ex.entries[0][0];

  // E8 = E4^2: a(n) = 480 sigma_7(n), cross-checked against the sigma_3
  // convolution before use
  QSeries e4 = eisenstein<GaussRat>(ClassicalSeries::E4, Nq);
  QSeries e8 = e4 * e4;
  out.max_rel_err = 0;
  for (long n = 1; n <= 2; ++n) {
    Rat expect = Rat(480 * sigma_naive(n, 7));
    if (e8.coeff(n, 0).re != expect)
      throw Error("classical_check_e8: sigma_7 and E4^2 oracles disagree");
    Real want = to_real(expect);
    Cplx got = series.coeff(n, 0);
    out.observed.push_back(to_decimal_string(got.re));
    out.expected.push_back(to_decimal_string(want));
    out.max_rel_err = std::max(out.max_rel_err, rel_err(got, want));
  }
  out.pass = out.max_rel_err <= out.tolerance;
  return out;
}

ClassicalCheck classical_check_delta(long N, long Nq, int threads) {
  ClassicalCheck out;
  out.name = "delta";
  out.N = N;
  out.Nq = Nq;
  out.tolerance = Real("1e-4");

  Representation triv = Representation::trivial();
  PoincareParams params;
  params.nu = {1};
  params.k = {12};
  params.N_trunc = N;
  ExtractionOptions opts;
  opts.Nq = Nq;
  opts.threads = threads;
  Extraction ex = extract_coefficients(triv, params, opts);
  const CSeries& series = ex.entries[0][0];

  QSeries delta = eisenstein<GaussRat>(ClassicalSeries::Delta, Nq);
  Cplx a1 = series.coeff(1, 0);
  if (abs(a1).is_zero()) throw Error("classical_check_delta: vanishing a(1)");
  out.max_rel_err = 0;
  for (long n = 2; n <= std::min(Nq, 4l); ++n) {
    Real want = to_real(delta.coeff(n, 0).re);  // tau(n), with tau(1) = 1
    Cplx got = series.coeff(n, 0) / a1;
    out.observed.push_back(to_decimal_string(got.re));
    out.expected.push_back(to_decimal_string(want));
    out.max_rel_err = std::max(out.max_rel_err, rel_err(got, want));
  }
  out.pass = out.max_rel_err <= out.tolerance;
  return out;
}

}  // namespace logvvmf
