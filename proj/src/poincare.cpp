#include "logvvmf/poincare.hpp"

#include "logvvmf/errors.hpp"
#include "logvvmf/estimates.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace logvvmf {

void PoincareParams::check_against(const Representation& rho) const {
  if (static_cast<int>(nu.size()) != rho.spec().count())
    throw std::invalid_argument("PoincareParams: nu length must equal the block count");
  if (static_cast<int>(k.size()) != rho.dim())
    throw std::invalid_argument("PoincareParams: k length must equal the dimension");
  if (N_trunc < 1) throw std::invalid_argument("PoincareParams: N_trunc must be >= 1");
}

struct PoincareEvaluator::Impl {
  Representation rho;
  PoincareParams params;
  bool folded = false;
  int threads = 1;
  int p = 0, t = 0, s = 0;
  std::vector<bool> active;     // nontriviality per column (folded mode)
  std::string warning;

  struct Coset {
    Real a, b, c, d;
    long ring;                  // max(|c|,|d|)
    CMatrix rho_inv;
  };
  std::vector<Coset> cosets;
  std::vector<Real> nu_mu;      // nu_r + mu_r per block
  std::vector<int> block_size, block_off;

  MatrixSample eval(const Cplx& tau) const;
  CMatrix term(const Coset& cs, const Cplx& tau, const Real& two_pi, Real* ring_mag) const;
};

PoincareEvaluator::PoincareEvaluator(const Representation& rho, PoincareParams params,
                                     FoldMode mode, int threads)
    : impl_(new Impl{rho, std::move(params)}) {
  impl_->params.check_against(rho);
  PrecisionGuard guard(impl_->params.precision);
  impl_->threads = std::max(1, threads);
  impl_->p = rho.dim();
  impl_->t = rho.spec().count();
  impl_->s = rho.spec().max_block();

  Real tol = eps_value() * 1000;
  SplitResult split = rho.split_by_S2(tol);
  switch (mode) {
    case FoldMode::Auto: impl_->folded = split.scalar; break;
    case FoldMode::Unfolded: impl_->folded = false; break;
    case FoldMode::Folded:
      if (!split.scalar)
        throw NotScalarS2("folded Poincare sum requires rho(S^2) = +-I");
      impl_->folded = true;
      break;
  }
  impl_->active.assign(impl_->p, true);
  if (impl_->folded) {
    for (int n = 0; n < impl_->p; ++n) {
      int want = (impl_->params.k[n] % 2 == 0) ? 1 : -1;
      impl_->active[n] = (split.epsilon == want);
    }
  }

  // "k >> 0" heuristic: accept min k >= 3 + 2*K4_hat, warn below, never fail.
  int kmin = *std::min_element(impl_->params.k.begin(), impl_->params.k.end());
  GrowthPair fit = fit_norm_growth(rho, 400);
  double bar = 3.0 + 2.0 * fit.k4.convert_to<double>();
  if (kmin < bar) {
    std::ostringstream os;
    os << "min weight " << kmin << " is below the convergence heuristic 3 + 2*K4 = " << bar
       << "; the truncated sum may converge slowly or not at all";
    impl_->warning = os.str();
  }

  for (int r = 0; r < impl_->t; ++r) {
    impl_->nu_mu.push_back(to_real(Rat(impl_->params.nu[r]) + rho.spec().blocks[r].mu));
    impl_->block_size.push_back(rho.spec().blocks[r].size);
    impl_->block_off.push_back(rho.spec().offset(r));
  }

  auto reps = coset_reps(impl_->params.N_trunc, impl_->folded);
  impl_->cosets.reserve(reps.size());
  for (const auto& m : reps) {
    Impl::Coset cs;
    cs.a = to_real(m.a());
    cs.b = to_real(m.b());
    cs.c = to_real(m.c());
    cs.d = to_real(m.d());
    Int ring = std::max(abs(m.c()), abs(m.d()));
    cs.ring = ring.get_si();
    cs.rho_inv = rho.evaluate(m.inverse());
    impl_->cosets.push_back(std::move(cs));
  }
}

PoincareEvaluator::~PoincareEvaluator() = default;
PoincareEvaluator::PoincareEvaluator(PoincareEvaluator&&) noexcept = default;

bool PoincareEvaluator::folded() const { return impl_->folded; }
const std::vector<bool>& PoincareEvaluator::column_active() const { return impl_->active; }
const std::string& PoincareEvaluator::weight_warning() const { return impl_->warning; }
std::size_t PoincareEvaluator::coset_count() const { return impl_->cosets.size(); }

CMatrix PoincareEvaluator::Impl::term(const Coset& cs, const Cplx& tau, const Real& two_pi,
                                      Real* ring_mag) const {
  using boost::multiprecision::exp;
  Cplx jf(cs.c * tau.re + cs.d, cs.c * tau.im);
  Cplx w = Cplx(cs.a * tau.re + cs.b, cs.a * tau.im) / jf;  // M tau

  // Lambda entries per block: e^{2 pi i (nu_r + mu_r) w}
  std::vector<Cplx> lam(t);
  for (int r = 0; r < t; ++r) {
    if (nu_mu[r].is_zero()) { lam[r] = Cplx(1); continue; }
    Real x = two_pi * nu_mu[r];
    lam[r] = Cplx(exp(-x * w.im)) * cis(x * w.re);
  }

  // binom(w, u) for u < max block size
  std::vector<Cplx> binoms(s);
  if (s > 0) binoms[0] = Cplx(1);
  for (int u = 1; u < s; ++u) binoms[u] = binoms[u - 1] * (w - Cplx(u - 1)) / Cplx(u);

  // column automorphy factors j(M,tau)^{-k_n}
  std::vector<Cplx> jpow(p);
  for (int n = 0; n < p; ++n) jpow[n] = pow_int(jf, -params.k[n]);

  // middle = Lambda * B^{-1}(w): block-diagonal, entry (i,j) in block r is
  // lam_r * binom(w, i - j)
  CMatrix out(p, p);
  for (int i = 0; i < p; ++i) {
    for (int n = 0; n < p; ++n) {
      Cplx acc(0);
      for (int r = 0; r < t; ++r) {
        int off = block_off[r];
        for (int lrow = off; lrow < off + block_size[r]; ++lrow) {
          // need column n of middle at row lrow: middle(lrow, n) nonzero only
          // when n is in block r and lrow >= n
          if (n < off || n >= off + block_size[r] || lrow < n) continue;
          acc += cs.rho_inv(i, lrow) * lam[r] * binoms[lrow - n];
        }
      }
      out(i, n) = acc * jpow[n];
    }
  }
  if (ring_mag && cs.ring == params.N_trunc) *ring_mag += max_abs(out);
  return out;
}

MatrixSample PoincareEvaluator::Impl::eval(const Cplx& tau) const {
  if (!(tau.im > 0)) throw std::invalid_argument("poincare_eval: Im(tau) must be positive");
  PrecisionGuard guard(params.precision);
  Real two_pi = 2 * pi_value();

  const std::size_t kBlock = 256;  // fixed blocking keeps reductions thread-count independent
  const std::size_t nblocks = (cosets.size() + kBlock - 1) / kBlock;
  std::vector<CMatrix> block_sum(nblocks);
  std::vector<Real> block_ring(nblocks, Real(0));

  auto run_block = [&](std::size_t bi) {
    std::vector<CompensatedCplx> acc(p * p);
    Real ring_mag = 0;
    std::size_t lo = bi * kBlock, hi = std::min(cosets.size(), lo + kBlock);
    for (std::size_t ci = lo; ci < hi; ++ci) {
      CMatrix tm = term(cosets[ci], tau, two_pi, &ring_mag);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) acc[i * p + j].add(tm(i, j));
    }
    CMatrix out(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) out(i, j) = acc[i * p + j].value();
    block_sum[bi] = std::move(out);
    block_ring[bi] = ring_mag;
  };

  if (threads <= 1 || nblocks <= 1) {
    for (std::size_t bi = 0; bi < nblocks; ++bi) run_block(bi);
  } else {
    unsigned digits = Real::default_precision();
    std::vector<std::thread> pool;
    std::size_t nt = std::min<std::size_t>(threads, nblocks);
    for (std::size_t w = 0; w < nt; ++w) {
      pool.emplace_back([&, w, digits]() {
        Real::default_precision(digits);
        for (std::size_t bi = w; bi < nblocks; bi += nt) run_block(bi);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<CompensatedCplx> acc(p * p);
  Real ring_mag = 0;
  for (std::size_t bi = 0; bi < nblocks; ++bi) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) acc[i * p + j].add(block_sum[bi](i, j));
    ring_mag += block_ring[bi];
  }

  MatrixSample out;
  out.tau = tau;
  out.value = CMatrix(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) out.value(i, j) = acc[i * p + j].value();
  if (!folded) {
    out.value = out.value.scaled(Cplx(Real(1) / 2));
    ring_mag /= 2;
  } else {
    for (int n = 0; n < p; ++n)
      if (!active[n])
        for (int i = 0; i < p; ++i) out.value(i, n) = Cplx(0);
  }

  int kmin = *std::min_element(params.k.begin(), params.k.end());
  if (kmin > 2 && params.N_trunc > 0)
    out.tail_bound = ring_mag * params.N_trunc / (kmin - 2);
  else
    out.tail_bound = std::numeric_limits<Real>::infinity();
  return out;
}

MatrixSample PoincareEvaluator::eval(const Cplx& tau) const { return impl_->eval(tau); }

MatrixSample poincare_eval(const Representation& rho, const PoincareParams& params,
                           const Cplx& tau, FoldMode mode, int threads) {
  PoincareEvaluator ev(rho, params, mode, threads);
  return ev.eval(tau);
}

Real modularity_residual(const Representation& rho, const PoincareParams& params,
                         const GammaElement& g, const Cplx& tau, FoldMode mode, int threads) {
  PoincareEvaluator ev(rho, params, mode, threads);
  MatrixSample p1 = ev.eval(tau);
  MatrixSample p2 = ev.eval(g.mobius(tau));
  CMatrix jinv(rho.dim(), rho.dim());
  Cplx jf = g.cocycle(tau);
  for (int n = 0; n < rho.dim(); ++n) jinv(n, n) = pow_int(jf, -params.k[n]);
  return max_abs(rho.evaluate(g) * p1.value - p2.value * jinv);
}

CMatrix lambda_rho(const Representation& rho, const std::vector<Cplx>& z) {
  if (static_cast<int>(z.size()) != rho.spec().count())
    throw std::invalid_argument("lambda_rho: one value per block required");
  CMatrix out(rho.dim(), rho.dim());
  for (int r = 0; r < rho.spec().count(); ++r) {
    int off = rho.spec().offset(r);
    for (int i = 0; i < rho.spec().blocks[r].size; ++i) out(off + i, off + i) = z[r];
  }
  return out;
}

CMatrix b_rho(const Representation& rho, const Cplx& x) {
  CMatrix out(rho.dim(), rho.dim());
  for (int r = 0; r < rho.spec().count(); ++r) {
    int off = rho.spec().offset(r);
    int m = rho.spec().blocks[r].size;
    CMatrix blk = binom_matrix_eval(m, x);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(off + i, off + j) = blk(i, j);
  }
  return out;
}

CMatrix b_rho_inverse(const Representation& rho, const Cplx& x) {
  CMatrix out(rho.dim(), rho.dim());
  for (int r = 0; r < rho.spec().count(); ++r) {
    int off = rho.spec().offset(r);
    int m = rho.spec().blocks[r].size;
    CMatrix blk = binom_matrix_inverse_eval(m, x);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(off + i, off + j) = blk(i, j);
  }
  return out;
}

CMatrix automorphy_J(const std::vector<int>& k, const GammaElement& g, const Cplx& tau) {
  CMatrix out(k.size(), k.size());
  Cplx jf = g.cocycle(tau);
  for (std::size_t n = 0; n < k.size(); ++n) out(n, n) = pow_int(jf, k[n]);
  return out;
}

LeadingTerm leading_term(const Representation& rho, const PoincareParams& params, int m, int n) {
  params.check_against(rho);
  if (m < 1 || m > rho.dim() || n < 1 || n > rho.dim())
    throw std::invalid_argument("leading_term: indices must lie in 1..p");
  int r = rho.spec().block_of(m - 1);
  int m_lo = rho.spec().offset(r);  // M_{r-1}, 0-based
  LeadingTerm out;
  out.present = (m_lo < n && n <= m);
  out.n_exp = params.nu[r];
  out.mu = rho.spec().blocks[r].mu;
  out.tau_degree = m - n;
  return out;
}

Extraction extract_coefficients(const Representation& rho, const PoincareParams& params,
                                const ExtractionOptions& opts_in) {
  ExtractionOptions opts = opts_in;
  PrecisionGuard guard(params.precision);
  if (opts.heights.empty()) opts.heights = {Real(1), Real("1.2"), Real("1.5")};
  if (opts.guard < 0) opts.guard = 0;
  if (opts.x_samples <= 0) opts.x_samples = 4 * (opts.Nq + opts.guard);
  if (opts.cond_limit.is_zero())
    opts.cond_limit = pow(Real(10), static_cast<long>(working_digits() / 2));

  const int p = rho.dim();
  PoincareEvaluator ev(rho, params, FoldMode::Auto, opts.threads);

  // sample P on the grid
  std::vector<Cplx> taus;
  for (const Real& y : opts.heights)
    for (long sx = 0; sx < opts.x_samples; ++sx)
      taus.emplace_back(Real(sx) / Real(opts.x_samples), y);
  std::vector<CMatrix> samples;
  samples.reserve(taus.size());
  Real sample_noise = 0;  // worst truncation tail over the grid
  for (const auto& tau : taus) {
    MatrixSample s = ev.eval(tau);
    sample_noise = std::max(sample_noise, s.tail_bound);
    samples.push_back(std::move(s.value));
  }

  Extraction out;
  out.entries.assign(p, std::vector<CSeries>());
  out.cond = 0;
  out.fit_residual = 0;
  Cplx tpi(Real(0), 2 * pi_value());

  for (int r = 0; r < rho.spec().count(); ++r) {
    const int m_r = rho.spec().blocks[r].size;
    const int off = rho.spec().offset(r);
    const Rat& mu = rho.spec().blocks[r].mu;
    // exponent list: nu_r plus every l with l + mu > 0 up to Nq
    long l_plus = (mu == 0) ? 1 : 0;
    std::vector<long> ls;
    if (params.nu[r] < l_plus) ls.push_back(params.nu[r]);
    for (long l = l_plus; l <= opts.Nq + opts.guard; ++l) ls.push_back(l);

    // design matrix: columns (j, l)
    std::size_t ncols = static_cast<std::size_t>(m_r) * ls.size();
    if (taus.size() < ncols + 5)
      throw IllConditionedFit("extract_coefficients: " + std::to_string(taus.size()) +
                              " samples cannot overdetermine " + std::to_string(ncols) +
                              " model columns; raise x_samples or heights");
    CMatrix a(taus.size(), ncols);
    for (std::size_t si = 0; si < taus.size(); ++si) {
      const Cplx& tau = taus[si];
      std::vector<Cplx> binoms(m_r);
      binoms[0] = Cplx(1);
      for (int j = 1; j < m_r; ++j) binoms[j] = binoms[j - 1] * (tau - Cplx(j - 1)) / Cplx(j);
      for (int j = 0; j < m_r; ++j)
        for (std::size_t li = 0; li < ls.size(); ++li) {
          Cplx qpow = exp(tpi * tau * Cplx(to_real(Rat(ls[li]) + mu)));
          a(si, j * ls.size() + li) = binoms[j] * qpow;
        }
    }
    // column scaling for conditioning
    std::vector<Real> colscale(ncols, Real(1));
    for (std::size_t cj = 0; cj < ncols; ++cj) {
      Real nrm = 0;
      for (std::size_t si = 0; si < taus.size(); ++si) nrm += norm(a(si, cj));
      nrm = sqrt(nrm);
      if (!nrm.is_zero()) {
        colscale[cj] = nrm;
        for (std::size_t si = 0; si < taus.size(); ++si)
          a(si, cj) = a(si, cj) / Cplx(nrm);
      }
    }

    // right-hand sides: all entries P_mn with row m in this block
    CMatrix b(taus.size(), static_cast<std::size_t>(m_r) * p);
    for (std::size_t si = 0; si < taus.size(); ++si)
      for (int i = 0; i < m_r; ++i)
        for (int n = 0; n < p; ++n) b(si, i * p + n) = samples[si](off + i, n);

    LstSqResult fit = least_squares(a, b);
    if (fit.cond_estimate > opts.cond_limit) {
      std::ostringstream os;
      os << "extract_coefficients: design matrix condition " << fit.cond_estimate.str(6)
         << " exceeds limit " << opts.cond_limit.str(6);
      throw IllConditionedFit(os.str());
    }
    out.cond = std::max(out.cond, fit.cond_estimate);

    for (int i = 0; i < m_r; ++i)
      for (int n = 0; n < p; ++n) {
        std::size_t rhs = i * p + n;
        Real bnorm = 0;
        for (std::size_t si = 0; si < taus.size(); ++si) bnorm = std::max(bnorm, abs(b(si, rhs)));
        Real resid = fit.residual_norm[rhs];
        out.fit_residual = std::max(out.fit_residual, resid);
        CSeries series(mu, opts.Nq, Basis::Binomial);
        // noise floor per column: truncation error absorbed by the fit (up to
        // the full sample-noise budget), the projection residual, and roundoff
        Real noise = sample_noise * sqrt(Real(taus.size())) + resid +
                     eps_value() * (1 + bnorm);
        for (int j = 0; j < m_r; ++j)
          for (std::size_t li = 0; li < ls.size(); ++li) {
            if (ls[li] > opts.Nq) continue;  // guard exponents are not reported
            Cplx coef = fit.x(j * ls.size() + li, rhs) / Cplx(colscale[j * ls.size() + li]);
            Real floor_c = 30 * noise / colscale[j * ls.size() + li];
            if (abs(coef) > floor_c) series.add_coeff(ls[li], j, coef);
          }
        out.entries[off + i].push_back(std::move(series));
      }
  }
  // entries were appended block-row by block-row in column order already
  return out;
}

HolomorphicForm build_holomorphic_form(const Representation& rho, const PoincareParams& params,
                                       long v, const ExtractionOptions& opts) {
  params.check_against(rho);
  const int t = rho.spec().count();
  std::vector<Rat> expo;
  for (int r = 0; r < t; ++r) {
    Rat e = Rat(params.nu[r]) + rho.spec().blocks[r].mu;
    if (e >= 0)
      throw std::invalid_argument("build_holomorphic_form: nu_r + mu_r must be negative");
    if (std::find(expo.begin(), expo.end(), e) != expo.end())
      throw std::invalid_argument("build_holomorphic_form: exponents nu_r + mu_r must be pairwise distinct");
    if (Rat(v) + e < 0)
      throw std::invalid_argument("build_holomorphic_form: v must clear every pole, v >= -(nu_r+mu_r)");
    expo.push_back(e);
  }

  HolomorphicForm out;
  out.extraction = extract_coefficients(rho, params, opts);
  const int p = rho.dim();

  long delta_order = opts.Nq + std::max<long>(0, v) + 8;
  CSeries delta = eisenstein<Cplx>(ClassicalSeries::Delta, delta_order);
  CSeries dv = CSeries::constant(Cplx(1), delta_order);
  for (long i = 0; i < v; ++i) dv = dv * delta;

  for (int m = 0; m < p; ++m) {
    CSeries sum = out.extraction.entries[m][rho.spec().offset(0) + rho.spec().blocks[0].size - 1];
    for (int r = 1; r < t; ++r)
      sum += out.extraction.entries[m][rho.spec().offset(r) + rho.spec().blocks[r].size - 1];
    out.components.push_back((dv * sum).truncated(opts.Nq));
  }
  for (const auto& comp : out.components) out.classes.push_back(classify_at_infinity(comp));

  // numeric rank of the coefficient matrix (components x flattened terms)
  std::map<std::pair<long, int>, std::size_t> cols;
  for (const auto& comp : out.components)
    for (const auto& [key, val] : comp.terms())
      cols.emplace(key, cols.size());
  CMatrix coefmat(p, std::max<std::size_t>(cols.size(), 1));
  for (int m = 0; m < p; ++m)
    for (const auto& [key, val] : out.components[m].terms())
      coefmat(m, cols[key]) = val;
  RankResult rr = rank_and_kernel(coefmat, Real("1e-8"));
  out.rank = rr.rank;
  out.full_rank = (rr.rank == static_cast<std::size_t>(p));
  return out;
}

}  // namespace logvvmf
