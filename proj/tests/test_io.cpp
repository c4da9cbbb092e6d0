#include "logvvmf/io.hpp"

#include "logvvmf/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

using namespace logvvmf;

TEST_SUITE("io") {

TEST_CASE("decimal strings round-trip at full precision") {
  Real x = sqrt(Real(2)) / 3;
  std::string s = to_decimal_string(x);
  CHECK(parse_real(s) == x);

  Cplx z(x, -x / 7);
  Cplx back = cplx_from_json(cplx_to_json(z));
  CHECK(back == z);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == make_rat(3, 4));
  CHECK(parse_rational("-7") == make_rat(-7));
  CHECK(parse_rational("0.25") == make_rat(1, 4));
  CHECK(parse_rational("-1.5e-2") == make_rat(-3, 200));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("series files round-trip") {
  CSeries f(make_rat(1, 3), 6);
  f.add_coeff(-1, 0, Cplx(Real("1.5"), Real(0)));
  f.add_coeff(2, 1, Cplx(Real("-0.125"), Real(2)));
  Json j = series_to_json(f);
  CSeries back = series_from_json(j);
  CHECK(back.mu() == f.mu());
  CHECK(back.order() == f.order());
  CHECK(back.basis() == f.basis());
  CHECK(back.coeff(-1, 0) == f.coeff(-1, 0));
  CHECK(back.coeff(2, 1) == f.coeff(2, 1));

  CHECK(json_series_is_rational(j));
  QSeries q = qseries_from_json(j);
  CHECK(q.coeff(2, 1) == GaussRat(make_rat(-1, 8), Rat(2)));

  // a non-rational coefficient switches the mode detection off
  Json j2 = j;
  j2["terms"].push_back(Json::array({3, 0, Json::array({"1.41421356e0far", "0"})}));
  CHECK_THROWS(series_from_json(j2));
}

TEST_CASE("representation files round-trip") {
  Representation rho = Representation::standard();
  Json j = rep_to_json(rho);
  Representation back = rep_from_json(j);
  CHECK(back.dim() == 2);
  CHECK(max_abs(back.rho_S() - rho.rho_S()).is_zero());
  CHECK(back.spec().blocks[0].size == 2);
  CHECK(back.spec().blocks[0].mu == 0);

  // mu accepted as a rational string
  Json j2 = j;
  j2["blocks"] = Json::array({Json::array({2, "1/3"})});
  Representation third = rep_from_json(j2);
  CHECK(third.spec().blocks[0].mu == make_rat(1, 3));

  Json bad = j;
  bad["dim"] = 5;
  CHECK_THROWS(rep_from_json(bad));
}

TEST_CASE("gamma and tau argument parsing") {
  GammaElement g = parse_gamma("2,1,1,1");
  CHECK(g == GammaElement(2, 1, 1, 1));
  CHECK_THROWS(parse_gamma("1,2,3"));
  CHECK_THROWS(parse_gamma("1,1,1,1"));
  Cplx tau = parse_cplx_pair("0.5,2");
  CHECK(tau.re == Real("0.5"));
  CHECK(tau.im == Real(2));
}

TEST_CASE("csv export shape") {
  CSeries f(Rat(0), 3);
  f.add_coeff(1, 0, Cplx(1));
  f.add_coeff(1, 1, Cplx(Real(0), Real(2)));
  std::string csv = series_to_csv(f);
  CHECK(csv.find("n,exponent,j0_re,j0_im,j1_re,j1_im") == 0);
  CHECK(csv.find("\n1,") != std::string::npos);
}

TEST_CASE("config loading and env override") {
  RunConfig base = RunConfig::load("");
  CHECK(base.precision == kDefaultDigits);

  {
    std::ofstream out("io_test_config.json");
    out << "{\"precision\": 40, \"N_trunc\": 77, \"format\": \"csv\"}";
  }
  RunConfig file = RunConfig::load("io_test_config.json");
  CHECK(file.precision == 40);
  CHECK(file.N_trunc == 77);
  CHECK(file.format == "csv");
  std::remove("io_test_config.json");
  setenv("LOGVVMF_PRECISION", "48", 1);
  RunConfig env = RunConfig::load("");
  CHECK(env.precision == 48);
  unsetenv("LOGVVMF_PRECISION");

  Json man = manifest_json("decompose", base, 12.5);
  CHECK(man["command"] == "decompose");
  CHECK(man["config"]["precision"] == base.precision);
  CHECK(man.contains("versions"));
}

TEST_CASE("mlde json shape") {
  QSeries delta = eisenstein<GaussRat>(ClassicalSeries::Delta, 24);
  Mlde<GaussRat> m = minimal_mlde<GaussRat>({delta}, 12);
  Json j = mlde_to_json(m);
  CHECK(j["order"] == 1);
  CHECK(j["lead_weight"] == 0);
  REQUIRE(j["g"].size() == 2);
  CHECK(j["g"][0]["monomials"][0]["coeff"][0] == "1");
}

}  // TEST_SUITE
