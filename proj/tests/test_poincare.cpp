#include "logvvmf/poincare.hpp"

#include "logvvmf/errors.hpp"

#include <doctest.h>

#include <random>

using namespace logvvmf;

namespace {

double dval(const Real& r) { return r.convert_to<double>(); }

// one summand of the Poincare series, assembled from the public pieces
CMatrix poincare_term(const Representation& rho, const PoincareParams& params,
                      const GammaElement& m, const Cplx& tau) {
  Cplx w = m.mobius(tau);
  std::vector<Cplx> z;
  for (int r = 0; r < rho.spec().count(); ++r) {
    Real x = 2 * pi_value() * to_real(Rat(params.nu[r]) + rho.spec().blocks[r].mu);
    z.push_back(Cplx(exp(-x * w.im)) * cis(x * w.re));
  }
  CMatrix jinv(rho.dim(), rho.dim());
  Cplx jf = m.cocycle(tau);
  for (int n = 0; n < rho.dim(); ++n) jinv(n, n) = pow_int(jf, -params.k[n]);
  return rho.evaluate(m.inverse()) * lambda_rho(rho, z) * b_rho_inverse(rho, w) * jinv;
}

}  // namespace

TEST_SUITE("poincare") {

TEST_CASE("block diagonal helpers") {
  BlockSpec spec{{JordanBlock{2, Rat(0)}, JordanBlock{1, make_rat(1, 2)}}};
  CMatrix s(3, 3);
  s(0, 0) = Cplx(1); s(1, 1) = Cplx(1); s(2, 2) = Cplx(1);
  Representation rho(s, spec);

  CMatrix lam = lambda_rho(rho, {Cplx(2), Cplx(3)});
  CHECK(dval(abs(lam(0, 0) - Cplx(2))) < 1e-30);
  CHECK(dval(abs(lam(1, 1) - Cplx(2))) < 1e-30);
  CHECK(dval(abs(lam(2, 2) - Cplx(3))) < 1e-30);
  CHECK(dval(abs(lam(0, 1))) < 1e-30);

  // t = 1, z = 1 gives the identity
  Representation triv = Representation::trivial();
  CHECK(dval(max_abs(lambda_rho(triv, {Cplx(1)}) - CMatrix::identity(1))) < 1e-30);

  // B_rho blockwise: (2,1) entry of the 2-block is -x; inverse has +x
  Cplx x(Real("0.7"), Real("0.3"));
  CMatrix b = b_rho(rho, x), binv = b_rho_inverse(rho, x);
  CHECK(dval(abs(b(1, 0) + x)) < 1e-30);
  CHECK(dval(abs(binv(1, 0) - x)) < 1e-30);
  CHECK(dval(abs(b(2, 0))) < 1e-30);
  CHECK(dval(max_abs(b * binv - CMatrix::identity(3))) < 1e-32);

  // Lambda commutes with B_rho
  CHECK(dval(max_abs(lam * b - b * lam)) < 1e-32);
}

TEST_CASE("matrix automorphy factor") {
  Cplx i(Real(0), Real(1));
  CMatrix jt = automorphy_J({2, 3}, GammaElement::T(), i);
  CHECK(dval(max_abs(jt - CMatrix::identity(2))) < 1e-30);

  CMatrix js = automorphy_J({2, 3}, GammaElement::S(), i);
  CHECK(dval(abs(js(0, 0) - Cplx(-1))) < 1e-30);
  CHECK(dval(abs(js(1, 1) - Cplx(Real(0), Real(-1)))) < 1e-30);

  // cocycle identity J(gh,tau) = J(g, h tau) J(h, tau)
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> e(-3, 3);
  for (int it = 0; it < 20; ++it) {
    GammaElement g = GammaElement::S() * GammaElement::T_pow(e(rng));
    GammaElement h = GammaElement::T_pow(e(rng)) * GammaElement::S() * GammaElement::T_pow(e(rng));
    Cplx tau(Real(e(rng)) / 4, Real("1.3"));
    CMatrix lhs = automorphy_J({2, 5}, g * h, tau);
    CMatrix rhs = automorphy_J({2, 5}, g, h.mobius(tau)) * automorphy_J({2, 5}, h, tau);
    CHECK(dval(max_abs(lhs - rhs)) < 1e-26);
  }
}

TEST_CASE("summand invariant under T M and, on active columns, under -M") {
  Representation rho = Representation::standard();
  PoincareParams params{{1}, {7, 7}, 10, 0};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> e(-4, 4);
  Cplx tau(Real("0.23"), Real("1.4"));
  for (int it = 0; it < 12; ++it) {
    GammaElement m = GammaElement::S() * GammaElement::T_pow(e(rng)) * GammaElement::S() *
                     GammaElement::T_pow(e(rng));
    CMatrix base = poincare_term(rho, params, m, tau);
    CMatrix shifted = poincare_term(rho, params, GammaElement::T() * m, tau);
    CHECK(dval(max_abs(base - shifted)) < 1e-25);
    // odd weights, epsilon = -1: nontriviality holds and -M gives the same term
    CMatrix neg = poincare_term(rho, params, m.negated(), tau);
    CHECK(dval(max_abs(base - neg)) < 1e-25);
  }
}

TEST_CASE("weight-8 series for the trivial representation is E4^2") {
  Representation triv = Representation::trivial();
  PoincareParams params{{0}, {8}, 60, 0};
  PoincareEvaluator ev(triv, params);
  CHECK(ev.folded());

  CSeries e4 = eisenstein<Cplx>(ClassicalSeries::E4, 60);
  for (double y : {1.0, 1.4}) {
    Cplx tau(Real("0.2"), Real(y));
    Cplx p = ev.eval(tau).value(0, 0);
    Cplx e = evaluate(e4, tau).value;
    CHECK(dval(abs(p - e * e)) < 1e-9);
  }

  // folded sum and the general half-sum agree for even weight
  PoincareEvaluator evu(triv, params, FoldMode::Unfolded);
  Cplx tau(Real("0.1"), Real("1.1"));
  CHECK(dval(max_abs(ev.eval(tau).value - evu.eval(tau).value)) < 1e-28);

  // diagonal leading behavior: P_00 - q^0 -> 0 up the imaginary axis
  Real d1 = abs(ev.eval(Cplx(Real(0), Real("1.5"))).value(0, 0) - Cplx(1));
  Real d2 = abs(ev.eval(Cplx(Real(0), Real(3))).value(0, 0) - Cplx(1));
  CHECK(d2 < d1);
  CHECK(dval(d2) < 1e-2);

  // deterministic parallel reduction: thread count does not change bits
  MatrixSample serial = ev.eval(tau);
  PoincareEvaluator ev4(triv, params, FoldMode::Auto, 4);
  MatrixSample parallel = ev4.eval(tau);
  CHECK(serial.value(0, 0) == parallel.value(0, 0));
}

TEST_CASE("modularity residuals") {
  Representation triv = Representation::trivial();
  PoincareParams params{{0}, {8}, 100, 0};
  Cplx i(Real(0), Real(1));

  CHECK(dval(modularity_residual(triv, params, GammaElement::identity(), i)) < 1e-30);
  CHECK(dval(modularity_residual(triv, params, GammaElement::T(), i)) <= 1e-8);

  // residual decreases monotonically as N doubles (g = S, tau = i)
  Real prev;
  bool first = true;
  for (long n : {25l, 50l, 100l}) {
    PoincareParams p2{{0}, {8}, n, 0};
    Real r = modularity_residual(triv, p2, GammaElement::S(), i);
    if (!first) CHECK(r < prev + Real("1e-12"));
    prev = r;
    first = false;
  }
}

TEST_CASE("column parity vanishing in the half-sum") {
  // standard rep (epsilon = -1), weights (8, 7): the even column dies
  Representation rho = Representation::standard();
  PoincareParams params{{0}, {8, 7}, 30, 0};
  MatrixSample s = poincare_eval(rho, params, Cplx(Real("0.2"), Real("1.2")), FoldMode::Unfolded);
  Real even_col = 0, odd_col = 0;
  for (int i = 0; i < 2; ++i) {
    even_col = std::max(even_col, abs(s.value(i, 0)));
    odd_col = std::max(odd_col, abs(s.value(i, 1)));
  }
  CHECK(dval(even_col) < 1e-25);
  CHECK(dval(odd_col) > 1e-4);

  // folded mode projects the inactive column to exact zeros
  MatrixSample sf = poincare_eval(rho, params, Cplx(Real("0.2"), Real("1.2")), FoldMode::Auto);
  CHECK(dval(abs(sf.value(0, 0))) == 0.0);
  CHECK(dval(abs(sf.value(1, 0))) == 0.0);
  CHECK(dval(abs(sf.value(1, 1))) > 1e-4);
}

TEST_CASE("folded mode requires scalar rho(S^2)") {
  // direct sum of trivial and standard: rho(S^2) has both eigenvalues
  BlockSpec spec{{JordanBlock{1, Rat(0)}, JordanBlock{2, Rat(0)}}};
  CMatrix s3(3, 3);
  s3(0, 0) = Cplx(1);
  s3(1, 2) = Cplx(1);
  s3(2, 1) = Cplx(-1);
  Representation sum(s3, spec);
  PoincareParams params{{0, 0}, {6, 6, 6}, 10, 0};
  CHECK_THROWS_AS(PoincareEvaluator(sum, params, FoldMode::Folded), NotScalarS2);
  // auto mode falls back to the general half-sum
  PoincareEvaluator ev(sum, params, FoldMode::Auto);
  CHECK(!ev.folded());
}

TEST_CASE("degenerate fits are rejected") {
  Representation rho = Representation::standard();
  PoincareParams params{{0}, {7, 7}, 20, 0};
  ExtractionOptions opts;
  opts.Nq = 3;
  opts.x_samples = 2;  // far fewer samples than model columns
  CHECK_THROWS_AS(extract_coefficients(rho, params, opts), IllConditionedFit);

  ExtractionOptions tight;
  tight.Nq = 3;
  tight.cond_limit = Real("1.5");  // no real design matrix is this clean
  CHECK_THROWS_AS(extract_coefficients(rho, params, tight), IllConditionedFit);
}

TEST_CASE("leading term structure") {
  Representation rho = Representation::standard();
  PoincareParams params{{0}, {7, 7}, 10, 0};
  LeadingTerm diag = leading_term(rho, params, 2, 2);
  CHECK(diag.present);
  CHECK(diag.n_exp == 0);
  CHECK(diag.tau_degree == 0);
  LeadingTerm off = leading_term(rho, params, 2, 1);
  CHECK(off.present);
  CHECK(off.tau_degree == 1);
  CHECK(!leading_term(rho, params, 1, 2).present);

  BlockSpec spec{{JordanBlock{1, Rat(0)}, JordanBlock{2, Rat(0)}}};
  CMatrix s3(3, 3);
  s3(0, 0) = Cplx(1);
  s3(1, 2) = Cplx(1);
  s3(2, 1) = Cplx(-1);
  Representation sum(s3, spec);
  PoincareParams p3{{0, 0}, {5, 5, 5}, 10, 0};
  CHECK(!leading_term(sum, p3, 1, 2).present);  // column outside the row block
  CHECK(leading_term(sum, p3, 1, 1).present);
  CHECK(leading_term(sum, p3, 3, 2).tau_degree == 1);
}

TEST_CASE("coefficient extraction against the classical series") {
  Representation triv = Representation::trivial();
  PoincareParams params{{0}, {8}, 60, 0};
  ExtractionOptions opts;
  opts.Nq = 3;
  Extraction ex = extract_coefficients(triv, params, opts);
  const CSeries& s = ex.entries[0][0];
  CHECK(dval(abs(s.coeff(0, 0) - Cplx(1))) < 1e-8);
  CHECK(dval(abs(s.coeff(1, 0) - Cplx(480)) / 480) < 1e-6);
  CHECK(dval(abs(s.coeff(2, 0) - Cplx(61920)) / 61920) < 1e-6);
  CHECK(s.max_tau_degree() == 0);
}

TEST_CASE("log structure of the extracted standard-rep series") {
  Representation rho = Representation::standard();
  PoincareParams params{{0}, {7, 7}, 150, 0};
  ExtractionOptions opts;
  opts.Nq = 4;
  Extraction ex = extract_coefficients(rho, params, opts);
  // diagonal constant terms 1; the (2,1) entry leads with binom(tau,1) q^0
  CHECK(dval(abs(ex.entries[0][0].coeff(0, 0) - Cplx(1))) < 1e-5);
  CHECK(dval(abs(ex.entries[1][1].coeff(0, 0) - Cplx(1))) < 1e-5);
  CHECK(dval(abs(ex.entries[1][0].coeff(0, 1) - Cplx(1))) < 1e-5);
  // tau-degree bounds: row 1 stays at degree 0, row 2 at most degree 1
  CHECK(ex.entries[0][0].max_tau_degree() == 0);
  CHECK(ex.entries[0][1].max_tau_degree() == 0);
  CHECK(ex.entries[1][0].max_tau_degree() <= 1);
  CHECK(ex.entries[1][1].max_tau_degree() <= 1);
  // the (1,2) entry has no q^0 term
  CHECK(ex.entries[0][1].coeff(0, 0).is_zero());
}

TEST_CASE("fractional exponents: the eta^12 multiplier system") {
  // one-dimensional representation with rho(T) = -1 (mu = 1/2), rho(S) = -1;
  // the weight-6 cusp space for this multiplier is spanned by
  // eta^12 = q^{1/2} prod (1-q^n)^12, so the Poincare series at nu = 0 is a
  // multiple of it
  CMatrix s1(1, 1);
  s1(0, 0) = Cplx(-1);
  Representation chi(s1, BlockSpec{{JordanBlock{1, make_rat(1, 2)}}});
  CHECK(chi.validate(Real("1e-30")).ok);
  SplitResult split = chi.split_by_S2(Real("1e-20"));
  CHECK(split.scalar);
  CHECK(split.epsilon == 1);
  CHECK(chi.nontriviality_holds(6, Real("1e-20")));

  PoincareParams params{{0}, {6}, 150, 0};
  ExtractionOptions opts;
  opts.Nq = 3;
  Extraction ex = extract_coefficients(chi, params, opts);
  const CSeries& p = ex.entries[0][0];
  CHECK(p.mu() == make_rat(1, 2));

  // oracle: prod_{n<=6} (1-q^n)^12 by exact polynomial multiplication
  std::vector<long> euler(7, 0);
  euler[0] = 1;
  for (int n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 12; ++rep) {
      std::vector<long> next(7, 0);
      for (int i = 0; i <= 6; ++i) {
        if (!euler[i]) continue;
        next[i] += euler[i];
        if (i + n <= 6) next[i + n] -= euler[i];
      }
      euler = next;
    }
  REQUIRE(euler[1] == -12);
  REQUIRE(euler[2] == 54);
  REQUIRE(euler[3] == -88);

  Cplx a0 = p.coeff(0, 0);
  CHECK(dval(abs(a0)) > 1e-6);  // the series is a nonzero multiple
  // truncation error amplifies like e^{2 pi n y_min} per coefficient at the
  // weakly convergent weight 6, so the tolerance widens with n
  double tol[4] = {0, 1e-5, 1e-4, 1e-3};
  for (long n = 1; n <= 3; ++n) {
    Cplx ratio = p.coeff(n, 0) / a0;
    CHECK(dval(abs(ratio - Cplx(euler[n]))) < tol[n]);
  }

  // residual of the transformation law decays for the character too
  Real r1 = modularity_residual(chi, PoincareParams{{0}, {6}, 30, 0}, GammaElement::T(),
                                Cplx(Real(0), Real(1)));
  Real r2 = modularity_residual(chi, PoincareParams{{0}, {6}, 90, 0}, GammaElement::T(),
                                Cplx(Real(0), Real(1)));
  CHECK(r2 < r1);
}

TEST_CASE("low weights carry a convergence warning") {
  Representation triv = Representation::trivial();
  PoincareParams low{{0}, {2}, 10, 0};
  PoincareEvaluator ev_low(triv, low);
  CHECK(!ev_low.weight_warning().empty());
  PoincareParams ok{{0}, {8}, 10, 0};
  PoincareEvaluator ev_ok(triv, ok);
  CHECK(ev_ok.weight_warning().empty());
}

TEST_CASE("holomorphic form construction") {
  Representation triv = Representation::trivial();
  PoincareParams params{{-1}, {12}, 50, 0};
  ExtractionOptions opts;
  opts.Nq = 6;
  HolomorphicForm f = build_holomorphic_form(triv, params, 1, opts);
  REQUIRE(f.components.size() == 1);
  CHECK(f.classes[0] == InfinityClass::Holomorphic);
  CHECK(f.full_rank);

  PoincareParams badnu{{0}, {12}, 20, 0};
  CHECK_THROWS_AS(build_holomorphic_form(triv, badnu, 1, opts), std::invalid_argument);
  CHECK_THROWS_AS(build_holomorphic_form(triv, params, 0, opts), std::invalid_argument);
}

}  // TEST_SUITE
