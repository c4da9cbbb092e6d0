#include "logvvmf/estimates.hpp"

#include "logvvmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace logvvmf {

bool check_prop36(const GammaElement& g) {
  EichlerParts parts = eichler_decompose_parts(g);
  if (parts.core.exponents.empty()) return true;  // +-T^m: nothing to check
  const GammaElement& e = parts.core_elem;
  const auto& ls = parts.core.exponents;
  Int prod_all = 1, prod_tail = 1;
  for (std::size_t j = 0; j < ls.size(); ++j) {
    prod_all *= ls[j];
    if (j >= 1) prod_tail *= ls[j];
  }
  const Int& l0 = ls[0];
  if (l0 < 0) return abs(prod_all) <= abs(e.d());
  if (l0 == 0) return abs(prod_tail) <= abs(e.d() - e.c());
  return abs(prod_all) <= abs(e.c()) + abs(e.d());
}

bool check_cd_bound(const Cplx& tau, const Int& c, const Int& d, const Real& K6) {
  Real cr = to_real(c), dr = to_real(d);
  Real lhs = cr * cr + dr * dr;
  Real x = cr * tau.re + dr;
  Real rhs = K6 * (x * x + cr * cr * tau.im * tau.im);
  return lhs <= rhs;
}

Real fit_cd_bound(int grid, long coeff_range) {
  using boost::multiprecision::sqrt;
  Real best = 0;
  Real y0 = sqrt(Real(3)) / 2;
  for (int xi = 0; xi <= grid; ++xi) {
    Real x = Real(xi) / grid - Real(1) / 2;  // [-1/2, 1/2]
    for (int yi = 0; yi <= grid; ++yi) {
      Real y = y0 + Real(3) * yi / grid;  // worst case sits on the bottom edge
      for (long c = -coeff_range; c <= coeff_range; ++c) {
        if (c == 0) continue;
        for (long d = -coeff_range; d <= coeff_range; ++d) {
          Real cr(c), dr(d);
          Real num = cr * cr + dr * dr;
          Real t = cr * x + dr;
          Real den = t * t + cr * cr * y * y;
          Real ratio = num / den;
          if (ratio > best) best = ratio;
        }
      }
    }
  }
  return best;
}

bool check_im_bound(const GammaElement& g, const Cplx& tau) {
  using boost::multiprecision::sqrt;
  if (g.c() == 0) return true;
  Cplx gt = g.mobius(tau);
  return gt.im <= 2 / sqrt(Real(3)) + eps_value();
}

namespace {

struct LineFit {
  double slope = 0, intercept = 0, rms = 0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
  }
  LineFit f;
  double den = n * sxx - sx * sx;
  f.slope = (den == 0) ? 0 : (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ys[i] - (f.slope * xs[i] + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

GrowthPair fit_norm_growth(const Representation& rho, int sample_size, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> cd(-1000, 1000);
  std::uniform_int_distribution<long> shift(-3, 3);

  std::vector<GammaElement> sample;
  while (static_cast<int>(sample.size()) < sample_size) {
    long c = cd(rng), d = cd(rng);
    if (c == 0) continue;
    Int ci(c), di(d), g;
    mpz_gcd(g.get_mpz_t(), ci.get_mpz_t(), di.get_mpz_t());
    if (g != 1) continue;
    Int a0;
    if (abs(ci) == 1) a0 = 0;
    else if (mpz_invert(a0.get_mpz_t(), di.get_mpz_t(), ci.get_mpz_t()) == 0) continue;
    Int a = a0 + shift(rng) * ci;
    Int b = (a * di - 1) / ci;
    sample.emplace_back(a, b, ci, di);
  }

  std::vector<double> xs, ys;
  for (const auto& g : sample) {
    Real nrm = matrix_norm(rho.evaluate(g));
    Real cd2 = to_real(Int(g.c() * g.c() + g.d() * g.d()));
    xs.push_back(std::log(cd2.convert_to<double>()));
    ys.push_back(std::log(std::max(nrm.convert_to<double>(), 1e-300)));
  }
  LineFit lf = fit_line(xs, ys);
  // lift the intercept so the bound dominates every sample
  double lift = -1e300;
  for (std::size_t i = 0; i < xs.size(); ++i) lift = std::max(lift, ys[i] - lf.slope * xs[i]);

  GrowthPair out;
  out.k4 = Real(std::max(lf.slope, 0.0));
  out.k3 = exp(Real(lift));
  out.samples = sample.size();

  // the inverse bound is stated in terms of gamma's own bottom row
  out.inverse_ok = true;
  for (const auto& g : sample) {
    Real nrm = matrix_norm(rho.evaluate(g.inverse()));
    Real cd2 = to_real(Int(g.c() * g.c() + g.d() * g.d()));
    Real bound = out.k3 * pow(cd2, out.k4) * Real("1.1");
    if (nrm > bound) { out.inverse_ok = false; break; }
  }
  return out;
}

namespace {

template <class F>
GrowthFit fit_fourier_growth_impl(const LogQSeries<F>& f, int k, bool cuspidal, long N,
                                  std::optional<Real> alpha) {
  std::map<long, Real> mags;  // n -> sum_j |coef|
  for (const auto& [key, v] : f.terms()) {
    if (key.first < 1 || key.first > N) continue;
    mags[key.first] += field_traits<F>::abs_value(v);
  }
  std::vector<double> xs, ys;
  long lo = 0, hi = 0;
  for (const auto& [n, m] : mags) {
    if (m.is_zero()) continue;
    if (lo == 0) lo = n;
    hi = n;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(m.template convert_to<double>()));
  }
  if (xs.size() < 50)
    throw InsufficientData("fit_fourier_growth: need at least 50 nonzero coefficients, have " +
                           std::to_string(xs.size()));
  LineFit lf = fit_line(xs, ys);
  GrowthFit out;
  out.exponent = Real(lf.slope);
  out.intercept = Real(lf.intercept);
  out.residual = Real(lf.rms);
  out.n_lo = lo;
  out.n_hi = hi;
  out.points = xs.size();
  out.cuspidal = cuspidal;
  if (alpha) {
    out.bound = cuspidal ? Real((k + *alpha) / 2) : Real(k + *alpha);
    out.bound_ok = out.exponent <= *out.bound;
  }
  return out;
}

}  // namespace

GrowthFit fit_fourier_growth(const CSeries& f, int k, bool cuspidal, long N,
                             std::optional<Real> alpha) {
  return fit_fourier_growth_impl(f, k, cuspidal, N, alpha);
}
GrowthFit fit_fourier_growth(const QSeries& f, int k, bool cuspidal, long N,
                             std::optional<Real> alpha) {
  return fit_fourier_growth_impl(f, k, cuspidal, N, alpha);
}

}  // namespace logvvmf
