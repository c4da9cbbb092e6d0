#pragma once

// Empirical verification of the inequality apparatus: the word-product
// bounds, the strip bound c^2+d^2 <= K6 |c tau + d|^2, norm growth of
// rho(gamma) in (c,d), and Fourier-coefficient growth fitting. All constants
// here are fitted outputs with recorded slack, never asserted universals.

#include "logvvmf/logq.hpp"
#include "logvvmf/rep.hpp"
#include "logvvmf/sl2z.hpp"

#include <optional>

namespace logvvmf {

// Case-appropriate word-product inequality, exact in integers:
//   |l_0 ... l_v| <= |d|        (l_0 < 0)
//   |l_1 ... l_v| <= |d - c|    (l_0 = 0)
//   |l_0 ... l_v| <= |c| + |d|  (l_0 > 0)
// Applied to the strict word when there is one, else to the strict core of
// the extended decomposition (checked against the core element's entries).
bool check_prop36(const GammaElement& g);

// c^2 + d^2 <= K6 |c tau + d|^2 for tau in the strip
// S = { |Re tau| <= 1/2, Im tau >= sqrt(3)/2 }.
bool check_cd_bound(const Cplx& tau, const Int& c, const Int& d, const Real& K6);

// Fits K6 as the max ratio over a deterministic grid; assert later samples
// with 5% slack.
Real fit_cd_bound(int grid = 40, long coeff_range = 30);

// Im(g tau) <= 2/sqrt(3) for c != 0 and tau in the strip.
bool check_im_bound(const GammaElement& g, const Cplx& tau);

// log |rho(gamma)| <= k3 + k4 log(c^2+d^2), fitted by least squares with the
// intercept lifted to dominate every sample; inverse_ok records whether the
// same fitted bound (with 10% slack) holds for all gamma^{-1}.
struct GrowthPair {
  Real k3, k4;
  std::size_t samples = 0;
  bool inverse_ok = false;
};
GrowthPair fit_norm_growth(const Representation& rho, int sample_size, unsigned long seed = 12345);

struct GrowthFit {
  Real exponent;    // fitted slope of log|a(n)| against log n
  Real intercept;
  Real residual;    // rms residual of the fit
  long n_lo = 0, n_hi = 0;
  std::size_t points = 0;
  bool cuspidal = false;
  std::optional<Real> bound;  // k + alpha, or k/2 + alpha/2 in cuspidal mode
  bool bound_ok = true;
};

// Slope fit on the nonzero coefficients of f with n <= N; throws
// InsufficientData below 50 usable points. When alpha is given the fit is
// compared against k + alpha (holomorphic) or k/2 + alpha/2 (cuspidal).
GrowthFit fit_fourier_growth(const CSeries& f, int k, bool cuspidal, long N,
                             std::optional<Real> alpha = std::nullopt);
GrowthFit fit_fourier_growth(const QSeries& f, int k, bool cuspidal, long N,
                             std::optional<Real> alpha = std::nullopt);

}  // namespace logvvmf
