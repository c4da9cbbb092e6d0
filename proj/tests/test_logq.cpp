#include "logvvmf/logq.hpp"

#include "logvvmf/errors.hpp"
#include "logvvmf/sl2z.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace logvvmf;

namespace {

double dval(const Real& r) { return r.convert_to<double>(); }

// ---- independent oracle arithmetic: plain coefficient vectors over Q ----

using Coeffs = std::vector<Rat>;  // c[n] is the q^n coefficient

Rat sigma_naive(long n, int k) {
  Rat s(0);
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      Int dk;
      mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
      s += Rat(dk);
    }
  return s;
}

Coeffs oracle_series(const Rat& c0, long scale, int k, long order) {
  Coeffs c(order + 1, Rat(0));
  c[0] = c0;
  for (long n = 1; n <= order; ++n) c[n] = Rat(scale) * sigma_naive(n, k);
  return c;
}

Coeffs conv(const Coeffs& a, const Coeffs& b) {
  Coeffs c(std::min(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j + i < c.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Coeffs lin(const Rat& x, const Coeffs& a, const Rat& y, const Coeffs& b) {
  Coeffs c(std::min(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x * a[i] + y * b[i];
  return c;
}

Coeffs theta_oracle(const Coeffs& a) {
  Coeffs c(a.size(), Rat(0));
  for (std::size_t n = 0; n < a.size(); ++n) c[n] = Rat(static_cast<long>(n)) * a[n];
  return c;
}

bool series_matches(const QSeries& s, const Coeffs& c) {
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (static_cast<long>(n) > s.order()) break;
    GaussRat got = s.coeff(static_cast<long>(n), 0);
    if (got.re != c[n] || got.im != 0) return false;
  }
  return true;
}

QSeries from_coeffs(const Coeffs& c) {
  QSeries s(Rat(0), static_cast<long>(c.size()) - 1);
  for (std::size_t n = 0; n < c.size(); ++n)
    s.add_coeff(static_cast<long>(n), 0, GaussRat(c[n]));
  return s;
}

}  // namespace

TEST_SUITE("logq") {

TEST_CASE("ring operations and mu carry") {
  QSeries one = QSeries::constant(GaussRat(1), 10);
  QSeries f(Rat(0), 10);
  f.add_coeff(1, 0, GaussRat(3));
  f.add_coeff(2, 1, GaussRat(make_rat(1, 2)));
  QSeries prod = f * one;
  CHECK(prod.coeff(1, 0) == GaussRat(3));
  CHECK(prod.coeff(2, 1) == GaussRat(make_rat(1, 2)));

  // q^{1/2} * q^{1/2} = q
  QSeries h(make_rat(1, 2), 10);
  h.add_coeff(0, 0, GaussRat(1));
  QSeries hh = h * h;
  CHECK(hh.mu() == 0);
  CHECK(hh.coeff(1, 0) == GaussRat(1));

  // tau * tau in the binomial basis: 2 binom(tau,2) + binom(tau,1)
  QSeries t(Rat(0), 10);
  t.add_coeff(0, 1, GaussRat(1));
  QSeries tt = t * t;
  CHECK(tt.coeff(0, 1) == GaussRat(1));
  CHECK(tt.coeff(0, 2) == GaussRat(2));

  // different mu never add
  CHECK_THROWS_AS(f + h, BlockMismatch);
}

TEST_CASE("theta on q powers and log terms") {
  QSeries f(Rat(0), 10);
  f.add_coeff(3, 0, GaussRat(1));
  QSeries tf = theta(f);
  CHECK(tf.coeff(3, 0) == GaussRat(3));

  // theta(tau) = 1/(2 pi i) in the power basis (complex mode)
  CSeries t(Rat(0), 4, Basis::Power);
  t.add_coeff(0, 1, Cplx(1));
  CSeries tt = theta(t);
  Cplx w = tt.coeff(0, 0);
  CHECK(dval(w.re) == doctest::Approx(0.0).epsilon(1e-25));
  CHECK(dval(w.im) == doctest::Approx(-1.0 / (2 * 3.14159265358979324)));
  CHECK(tt.coeff(0, 1).is_zero());

  // product rule on tau q^{1/2}
  CSeries g(make_rat(1, 2), 4, Basis::Power);
  g.add_coeff(0, 1, Cplx(1));
  CSeries tg = theta(g);
  CHECK(dval(abs(tg.coeff(0, 1) - Cplx(Real(1) / 2))) < 1e-30);
  CHECK(dval(abs(tg.coeff(0, 0) - w)) < 1e-30);

  // exact mode refuses the 1/(2 pi i) factor outside the scaled basis
  QSeries bad(Rat(0), 4, Basis::Power);
  bad.add_coeff(0, 1, GaussRat(1));
  CHECK_THROWS_AS(theta(bad), Error);
  // and stays rational on the scaled-log basis
  QSeries ok(Rat(0), 4, Basis::ScaledLog);
  ok.add_coeff(0, 1, GaussRat(1));
  QSeries tok = theta(ok);
  CHECK(tok.coeff(0, 0) == GaussRat(1));
}

TEST_CASE("theta against finite differences") {
  CSeries e4 = eisenstein<Cplx>(ClassicalSeries::E4, 40);
  CSeries te4 = theta(e4);
  Cplx tau(Real("0.31"), Real(1));
  Cplx tpi_inv = Cplx(1) / Cplx(Real(0), 2 * pi_value());
  std::vector<double> errs;
  for (double h : {1e-3, 1e-4}) {
    Cplx hp = tau + Cplx(Real(h)), hm = tau - Cplx(Real(h));
    Cplx fd = (evaluate(e4, hp).value - evaluate(e4, hm).value) / Cplx(Real(2 * h));
    Cplx diff = tpi_inv * fd - evaluate(te4, tau).value;
    errs.push_back(dval(abs(diff)));
  }
  double order = std::log10(errs[0] / errs[1]);
  CHECK(order >= 1.9);  // O(h^2)
}

TEST_CASE("eisenstein series against divisor-sum oracles") {
  const long N = 30;
  QSeries p = eisenstein<GaussRat>(ClassicalSeries::P, N);
  CHECK(p.coeff(1, 0) == GaussRat(2));
  CHECK(p.coeff(0, 0) == GaussRat(make_rat(-1, 12)));
  CHECK(series_matches(p, oracle_series(make_rat(-1, 12), 2, 1, N)));

  QSeries e4 = eisenstein<GaussRat>(ClassicalSeries::E4, N);
  CHECK(e4.coeff(0, 0) == GaussRat(1));
  Coeffs e4o = oracle_series(Rat(1), 240, 3, N);
  CHECK(series_matches(e4, e4o));

  Coeffs e6o = oracle_series(Rat(1), -504, 5, N);
  CHECK(series_matches(eisenstein<GaussRat>(ClassicalSeries::E6, N), e6o));

  // Delta = (E4^3 - E6^2)/1728 via the oracle convolution
  Coeffs delta_o = lin(make_rat(1, 1728), conv(conv(e4o, e4o), e4o), make_rat(-1, 1728),
                       conv(e6o, e6o));
  QSeries delta = eisenstein<GaussRat>(ClassicalSeries::Delta, N);
  CHECK(series_matches(delta, delta_o));
  CHECK(delta.coeff(1, 0) == GaussRat(1));
  CHECK(delta.coeff(2, 0) == GaussRat(-24));
  CHECK(delta.coeff(3, 0) == GaussRat(252));
  CHECK(delta.coeff(4, 0) == GaussRat(-1472));
}

TEST_CASE("Ramanujan closure under the modular derivative") {
  const long N = 24;
  // oracle sanity first: theta(Delta) = E2 Delta with E2 = 1 - 24 sigma_1
  Coeffs e4o = oracle_series(Rat(1), 240, 3, N);
  Coeffs e6o = oracle_series(Rat(1), -504, 5, N);
  Coeffs e2o = oracle_series(Rat(1), -24, 1, N);
  Coeffs delta_o = lin(make_rat(1, 1728), conv(conv(e4o, e4o), e4o), make_rat(-1, 1728),
                       conv(e6o, e6o));
  Coeffs lhs = theta_oracle(delta_o);
  Coeffs rhs = conv(e2o, delta_o);
  for (std::size_t n = 0; n < lhs.size(); ++n) REQUIRE(lhs[n] == rhs[n]);

  // D_12 Delta = 0, exactly, to the truncation order
  QSeries delta = eisenstein<GaussRat>(ClassicalSeries::Delta, N);
  QSeries d12 = modular_derivative(delta, 12);
  CHECK(d12.is_zero());

  // D_0 1 = 0
  QSeries one = QSeries::constant(GaussRat(1), N);
  CHECK(modular_derivative(one, 0).is_zero());

  // D_4 E4 = -E6/3 and D_6 E6 = -E4^2/2
  QSeries e4 = eisenstein<GaussRat>(ClassicalSeries::E4, N);
  QSeries e6 = eisenstein<GaussRat>(ClassicalSeries::E6, N);
  CHECK((modular_derivative(e4, 4) + e6.scaled(GaussRat(make_rat(1, 3)))).is_zero());
  CHECK((modular_derivative(e6, 6) + (e4 * e4).scaled(GaussRat(make_rat(1, 2)))).is_zero());

  // D_{-1} D_{-1} 1 = -E4/144
  QSeries d1 = modular_derivative(one, -1);
  QSeries d2 = modular_derivative(d1, 1);
  CHECK((d2 + e4.scaled(GaussRat(make_rat(1, 144)))).is_zero());
}

TEST_CASE("modular derivative is a derivation into the right weight") {
  const long N = 16;
  QSeries e4 = eisenstein<GaussRat>(ClassicalSeries::E4, N);
  QSeries e6 = eisenstein<GaussRat>(ClassicalSeries::E6, N);
  // D_{4+6}(E4 E6) = D_4(E4) E6 + E4 D_6(E6)
  QSeries lhs = modular_derivative(e4 * e6, 10);
  QSeries rhs = modular_derivative(e4, 4) * e6 + e4 * modular_derivative(e6, 6);
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("g <-> h block transforms") {
  // m = 1: identity
  QSeries f(make_rat(1, 3), 8);
  f.add_coeff(0, 0, GaussRat(5));
  auto h1 = g_to_h<GaussRat>({f});
  CHECK((h1[0] - f).is_zero());

  // (g0, g1) = (1, tau) has h-data (1, 0)
  QSeries g0 = QSeries::constant(GaussRat(1), 8);
  QSeries g1(Rat(0), 8);
  g1.add_coeff(0, 1, GaussRat(1));  // binom(tau,1) = tau
  auto h = g_to_h<GaussRat>({g0, g1});
  CHECK((h[0] - g0).is_zero());
  CHECK(h[1].is_zero());

  // round trip on random exact log-series
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> u(-6, 6);
  for (int it = 0; it < 10; ++it) {
    std::vector<QSeries> g;
    for (int i = 0; i < 3; ++i) {
      QSeries s(make_rat(1, 5), 6);
      for (long n = 0; n <= 6; ++n)
        for (int j = 0; j < 3; ++j)
          if (u(rng) > 2) s.add_coeff(n, j, GaussRat(make_rat(u(rng), 1 + std::abs(u(rng)))));
      g.push_back(std::move(s));
    }
    auto hh = g_to_h(g);
    auto back = h_to_g(hh);
    for (int i = 0; i < 3; ++i) CHECK((back[i] - g[i]).is_zero());
  }
}

TEST_CASE("h-periodicity after g_to_h") {
  // build g from h-data for a block J_{3, lambda} with mu = 1/3, then check
  // |h_j(tau+1) - lambda h_j(tau)| at sampled points
  Rat mu = make_rat(1, 3);
  std::vector<QSeries> hdata;
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> u(-4, 4);
  for (int i = 0; i < 3; ++i) {
    QSeries s(mu, 12);
    for (long n = 0; n <= 12; ++n) s.add_coeff(n, 0, GaussRat(make_rat(u(rng), 3)));
    hdata.push_back(std::move(s));
  }
  auto g = h_to_g(hdata);
  auto h = g_to_h(g);
  for (int i = 0; i < 3; ++i) CHECK((h[i] - hdata[i]).is_zero());

  Cplx lambda = cis(2 * pi_value() * to_real(mu));
  for (int i = 0; i < 3; ++i) {
    CSeries hc = to_cplx_series(h[i]);
    for (double x : {0.1, -0.3}) {
      Cplx tau(Real(x), Real("1.1"));
      Cplx at = evaluate(hc, tau).value;
      Cplx shifted = evaluate(hc, tau + Cplx(1)).value;
      CHECK(dval(abs(shifted - lambda * at)) <= 1e-9);
    }
  }
}

TEST_CASE("classification at infinity") {
  CHECK(classify_at_infinity(eisenstein<GaussRat>(ClassicalSeries::Delta, 12)) ==
        InfinityClass::Cuspidal);
  CHECK(classify_at_infinity(eisenstein<GaussRat>(ClassicalSeries::E4, 12)) ==
        InfinityClass::Holomorphic);
  QSeries mero(Rat(0), 6);
  mero.add_coeff(-1, 0, GaussRat(1));
  CHECK(classify_at_infinity(mero) == InfinityClass::Meromorphic);
  QSeries frac(make_rat(1, 2), 6);
  frac.add_coeff(0, 0, GaussRat(1));
  CHECK(classify_at_infinity(frac) == InfinityClass::Cuspidal);
}

TEST_CASE("evaluation") {
  CSeries one = CSeries::constant(Cplx(1), 4);
  Cplx tau(Real("0.2"), Real("1.7"));
  CHECK(dval(abs(evaluate(one, tau).value - Cplx(1))) < 1e-30);

  CSeries t(Rat(0), 4, Basis::Power);
  t.add_coeff(0, 1, Cplx(1));
  Cplx ti(Real(0), Real(1));
  CHECK(dval(abs(evaluate(t, ti).value - ti)) < 1e-30);

  // modular invariance of E4: |E4(-1/tau) - tau^4 E4(tau)| at tau = 2i
  CSeries e4 = eisenstein<Cplx>(ClassicalSeries::E4, 60);
  Cplx tau2(Real(0), Real(2));
  Cplx stau = GammaElement::S().mobius(tau2);
  Cplx lhs = evaluate(e4, stau).value;
  Cplx rhs = pow_int(tau2, 4) * evaluate(e4, tau2).value;
  CHECK(dval(abs(lhs - rhs)) <= 1e-8);
}

TEST_CASE("basis conversions round trip") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> u(-9, 9);
  QSeries f(make_rat(2, 7), 5);
  for (long n = -1; n <= 5; ++n)
    for (int j = 0; j < 4; ++j) f.add_coeff(n, j, GaussRat(make_rat(u(rng), 1 + std::abs(u(rng)))));
  QSeries back = f.convert(Basis::Power).convert(Basis::Binomial);
  CHECK((back - f).is_zero());

  // scaled-log round trip in the complex field
  CSeries fc = to_cplx_series(f);
  CSeries back2 = fc.convert(Basis::ScaledLog).convert(Basis::Binomial);
  CSeries diff = back2 - fc;
  Real worst = 0;
  for (const auto& [k, v] : diff.terms()) worst = std::max(worst, abs(v));
  CHECK(dval(worst) < 1e-25);
}

TEST_CASE("truncation accounting") {
  QSeries f(Rat(0), 4);
  f.add_coeff(2, 0, GaussRat(1));  // n_min = 2
  QSeries g(Rat(0), 3);
  g.add_coeff(1, 0, GaussRat(1));
  QSeries prod = f * g;
  CHECK(prod.order() == 5);  // min(4+1, 3+2)
  CHECK(prod.coeff(3, 0) == GaussRat(1));

  QSeries bad(Rat(0), 0);
  bad.add_coeff(-3, 0, GaussRat(1));
  QSeries bad2(Rat(0), 0);
  bad2.add_coeff(2, 0, GaussRat(1));
  CHECK_THROWS_AS(bad * bad, TruncationUnderflow);
  (void)bad2;
}

}  // TEST_SUITE
