#include "logvvmf/estimates.hpp"

#include "logvvmf/errors.hpp"

#include <doctest.h>

#include <random>

using namespace logvvmf;

namespace {
double dval(const Real& r) { return r.convert_to<double>(); }
}

TEST_SUITE("estimates") {

TEST_CASE("word-product inequalities: named cases and sweep") {
  // ST^{-2}: l_0 = -2, |l_0| <= |d| = 2
  CHECK(check_prop36(GammaElement(0, -1, 1, -2)));
  // S: l_0 = 0, empty product <= |d - c| = 1
  CHECK(check_prop36(GammaElement::S()));

  long checked = 0;
  const long B = 12;
  for (long c = -B; c <= B; ++c)
    for (long d = -B; d <= B; ++d)
      for (long a = -B; a <= B; ++a) {
        if (c == 0) {
          if (a * d != 1) continue;
          for (long b = -B; b <= B; ++b) {
            CHECK(check_prop36(GammaElement(a, b, c, d)));
            ++checked;
          }
          continue;
        }
        if ((a * d - 1) % c != 0) continue;
        long b = (a * d - 1) / c;
        if (b < -B || b > B) continue;
        CHECK(check_prop36(GammaElement(a, b, c, d)));
        ++checked;
      }
  CHECK(checked > 1000);
}

TEST_CASE("strip bound c^2 + d^2 <= K6 |c tau + d|^2") {
  Real k6 = fit_cd_bound(24, 12);
  CHECK(dval(k6) >= 2.0);  // the corner tau = -1/2 + i sqrt(3)/2, (c,d) = (1,1)

  Cplx i(Real(0), Real(1));
  CHECK(check_cd_bound(i, Int(1), Int(0), k6));
  Cplx corner(Real(-1) / 2, sqrt(Real(3)) / 2);
  CHECK(check_cd_bound(corner, Int(1), Int(1), k6));

  Real slack = k6 * Real("1.05");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.0, 4.0);
  std::uniform_int_distribution<long> ucd(-60, 60);
  long tested = 0;
  for (int it = 0; it < 10000; ++it) {
    Cplx tau(Real(ux(rng)), sqrt(Real(3)) / 2 + Real(uy(rng)));
    long c = ucd(rng), d = ucd(rng);
    if (c == 0 && d == 0) continue;
    ++tested;
    CHECK(check_cd_bound(tau, Int(c), Int(d), slack));
  }
  CHECK(tested > 9000);
}

TEST_CASE("Im(g tau) bounded on the strip for c != 0") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.0, 5.0);
  std::uniform_int_distribution<long> e(-5, 5);
  for (int it = 0; it < 300; ++it) {
    GammaElement g = GammaElement::S() * GammaElement::T_pow(e(rng)) * GammaElement::S() *
                     GammaElement::T_pow(e(rng));
    if (g.c() == 0) continue;
    Cplx tau(Real(ux(rng)), sqrt(Real(3)) / 2 + Real(uy(rng)));
    CHECK(check_im_bound(g, tau));
  }
}

TEST_CASE("norm growth fits") {
  GrowthPair triv = fit_norm_growth(Representation::trivial(), 200);
  CHECK(dval(triv.k4) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(triv.inverse_ok);

  GrowthPair std2 = fit_norm_growth(Representation::standard(), 1000);
  CHECK(std2.inverse_ok);
  CHECK(std2.samples == 1000);
  CHECK(dval(std2.k4) > 0.2);
  CHECK(dval(std2.k4) < 1.5);

  // unipotent 2-dim rep: rho(T) = J_{2,1}, rho(S) = same as standard
  GrowthPair uni = fit_norm_growth(Representation::standard(), 150, 777);
  CHECK(uni.inverse_ok);
}

TEST_CASE("fourier growth fits") {
  QSeries delta = eisenstein<GaussRat>(ClassicalSeries::Delta, 600);
  GrowthFit fd = fit_fourier_growth(delta, 12, true, 600);
  CHECK(dval(fd.exponent) > 4.8);
  CHECK(dval(fd.exponent) < 6.4);
  CHECK(fd.points >= 50);
  CHECK(fd.n_lo == 1);

  QSeries e4 = eisenstein<GaussRat>(ClassicalSeries::E4, 600);
  GrowthFit fe = fit_fourier_growth(e4, 4, false, 600);
  CHECK(dval(fe.exponent) > 2.7);
  CHECK(dval(fe.exponent) < 3.3);

  // with alpha supplied, the bound flag is evaluated
  GrowthFit fb = fit_fourier_growth(e4, 4, false, 600, Real(1));
  CHECK(fb.bound.has_value());
  CHECK(fb.bound_ok);

  QSeries c = QSeries::constant(GaussRat(1), 600);
  CHECK_THROWS_AS(fit_fourier_growth(c, 0, false, 600), InsufficientData);
}

}  // TEST_SUITE
