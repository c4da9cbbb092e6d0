#include "logvvmf/mlde.hpp"

#include "logvvmf/errors.hpp"
#include "logvvmf/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace logvvmf {

std::vector<std::pair<int, int>> mform_basis(long weight) {
  std::vector<std::pair<int, int>> out;
  if (weight < 0 || weight % 2 != 0) return out;
  for (int a = static_cast<int>(weight / 4); a >= 0; --a) {
    long rem = weight - 4l * a;
    if (rem % 6 == 0) out.emplace_back(a, static_cast<int>(rem / 6));
  }
  return out;
}

long mform_dim(long weight) { return static_cast<long>(mform_basis(weight).size()); }

namespace {

// shared cache of E4^a E6^b expansions within one computation
template <class F>
class MonomialCache {
 public:
  MonomialCache(long order, Basis basis) : order_(order), basis_(basis) {}
  const LogQSeries<F>& get(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    LogQSeries<F> s = LogQSeries<F>::constant(F(1), order_, basis_);
    if (a > 0) {
      const LogQSeries<F>& e4 = base4();
      for (int i = 0; i < a; ++i) s = s * e4;
    }
    if (b > 0) {
      const LogQSeries<F>& e6 = base6();
      for (int i = 0; i < b; ++i) s = s * e6;
    }
    return cache_.emplace(key, std::move(s)).first->second;
  }

 private:
  const LogQSeries<F>& base4() {
    if (!e4_) e4_ = eisenstein<F>(ClassicalSeries::E4, order_, basis_);
    return *e4_;
  }
  const LogQSeries<F>& base6() {
    if (!e6_) e6_ = eisenstein<F>(ClassicalSeries::E6, order_, basis_);
    return *e6_;
  }
  long order_;
  Basis basis_;
  std::optional<LogQSeries<F>> e4_, e6_;
  std::map<std::pair<int, int>, LogQSeries<F>> cache_;
};

// exact-mode components with log terms go to the scaled-log basis, where
// theta stays rational; each tau-monomial component is a scalar multiple of
// the original, which leaves the MLDE unchanged
template <class F>
LogQSeries<F> mlde_ready(const LogQSeries<F>& f) {
  if constexpr (field_traits<F>::exact) {
    if (f.basis() == Basis::ScaledLog || f.max_tau_degree() == 0)
      return f.convert(Basis::ScaledLog);
    if (f.basis() == Basis::Power) return reinterpret_power_as_scaledlog(f);
    return reinterpret_power_as_scaledlog(f.convert(Basis::Power));
  } else {
    return f.convert(Basis::ScaledLog);
  }
}

template <class F>
Matrix<F> coefficient_matrix(const std::vector<LogQSeries<F>>& series) {
  std::map<std::pair<long, int>, std::size_t> cols;
  for (const auto& s : series)
    for (const auto& [key, v] : s.terms()) cols.emplace(key, cols.size());
  Matrix<F> m(series.size(), std::max<std::size_t>(cols.size(), 1));
  for (std::size_t i = 0; i < series.size(); ++i)
    for (const auto& [key, v] : series[i].terms()) m(i, cols[key]) = v;
  return m;
}

template <class F>
std::size_t series_rank(const std::vector<LogQSeries<F>>& series) {
  Matrix<F> m = coefficient_matrix(series);
  if constexpr (field_traits<F>::exact) {
    std::size_t n = m.cols();
    return n - nullspace_exact(std::move(m)).size();
  } else {
    return rank_and_kernel(m, Real("1e-10")).rank;
  }
}

}  // namespace

template <class F>
LogQSeries<F> GradedModularForm<F>::q_expansion(long order, Basis basis) const {
  MonomialCache<F> cache(order, basis);
  LogQSeries<F> out(Rat(0), order, basis);
  for (const auto& [m, c] : coeffs) out += cache.get(m.first, m.second).scaled(c);
  return out;
}

template <class F>
std::string GradedModularForm<F>::str() const {
  std::ostringstream os;
  os << "M_" << weight << "[";
  bool first = true;
  for (const auto& [m, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << "c*Q^" << m.first << "R^" << m.second;
  }
  os << "]";
  return os.str();
}

template <class F>
std::vector<std::vector<LogQSeries<F>>> d_iterates(const std::vector<LogQSeries<F>>& comps,
                                                   long k, int count) {
  std::vector<std::vector<LogQSeries<F>>> out;
  std::vector<LogQSeries<F>> cur;
  for (const auto& c : comps) cur.push_back(mlde_ready(c));
  out.push_back(cur);
  for (int i = 0; i < count; ++i) {
    std::vector<LogQSeries<F>> next;
    for (const auto& f : out.back()) next.push_back(modular_derivative(f, k + 2 * i));
    out.push_back(std::move(next));
  }
  return out;
}

namespace {

template <class F>
struct KernelOutcome {
  std::vector<std::vector<F>> kernel;
  MldeSearchStats stats;
};

template <class F>
KernelOutcome<F> mlde_kernel(const std::vector<LogQSeries<F>>& comps_in, long k, int order,
                             long lead_weight) {
  if (order < 1) throw std::invalid_argument("find_mlde: order must be >= 1");
  if (lead_weight < 0 || lead_weight % 2 != 0)
    throw std::invalid_argument("find_mlde: leading weight must be even and >= 0");

  auto layers = d_iterates(comps_in, k, order);
  const std::size_t ncomp = comps_in.size();
  long order_q = layers[0][0].order();
  for (const auto& layer : layers)
    for (const auto& s : layer) order_q = std::min(order_q, s.order());

  if constexpr (!field_traits<F>::exact) {
    // an iterate that collapsed to rounding debris relative to what D can
    // produce from the previous layer counts as the zero series
    for (std::size_t li = 1; li < layers.size(); ++li)
      for (std::size_t ci = 0; ci < ncomp; ++ci) {
        Real prev = 0, cur = 0;
        for (const auto& [key, v] : layers[li - 1][ci].terms())
          prev = std::max(prev, field_traits<F>::abs_value(v));
        for (const auto& [key, v] : layers[li][ci].terms())
          cur = std::max(cur, field_traits<F>::abs_value(v));
        Real amp = Real(order_q + 1) * (std::abs(k) + 2l * order + order_q + 1);
        if (!prev.is_zero() && cur <= prev * amp * Real("1e-20"))
          layers[li][ci] = LogQSeries<F>(layers[li][ci].mu(), layers[li][ci].order(),
                                         layers[li][ci].basis());
      }
  }

  // unknowns: monomial coefficients of g_j in M_{lead_weight + 2j}
  std::vector<std::pair<int, std::pair<int, int>>> unknowns;  // (j, (a,b))
  for (int j = 0; j <= order; ++j)
    for (auto& m : mform_basis(lead_weight + 2l * j)) unknowns.emplace_back(j, m);
  if (unknowns.empty()) throw NoSolution("find_mlde: no monomials at this leading weight");

  MonomialCache<F> cache(order_q - std::min(0l, layers[0][0].n_min()),
                         layers[0][0].basis());
  // column series: monomial * D^{order-j} F, per component. In float mode a
  // column whose coefficients sit at rounding level relative to the scale of
  // its factors is cancellation debris and counts as zero.
  std::vector<std::vector<LogQSeries<F>>> cols;  // [unknown][component]
  for (auto& [j, mono] : unknowns) {
    std::vector<LogQSeries<F>> colcomp;
    for (std::size_t ci = 0; ci < ncomp; ++ci) {
      LogQSeries<F> prod =
          (cache.get(mono.first, mono.second) * layers[order - j][ci]).truncated(order_q);
      if constexpr (!field_traits<F>::exact) {
        Real ref = 0, got = 0;
        for (const auto& [key, v] : cache.get(mono.first, mono.second).terms())
          ref = std::max(ref, field_traits<F>::abs_value(v));
        Real lay = 0;
        for (const auto& [key, v] : layers[order - j][ci].terms())
          lay = std::max(lay, field_traits<F>::abs_value(v));
        ref *= lay;
        for (const auto& [key, v] : prod.terms())
          got = std::max(got, field_traits<F>::abs_value(v));
        if (!ref.is_zero() && got <= ref * Real("1e-20"))
          prod = LogQSeries<F>(prod.mu(), prod.order(), prod.basis());
      }
      colcomp.push_back(std::move(prod));
    }
    cols.push_back(std::move(colcomp));
  }

  // equations: one per (component, n, tau-degree) with any support
  std::map<std::pair<std::size_t, std::pair<long, int>>, std::size_t> rows;
  for (std::size_t u = 0; u < cols.size(); ++u)
    for (std::size_t ci = 0; ci < ncomp; ++ci)
      for (const auto& [key, v] : cols[u][ci].terms()) rows.emplace(std::make_pair(ci, key), rows.size());

  // overdetermination guard on the available truncation window (zero rows
  // are vacuously satisfied and do not reduce it)
  long n_lo = 0;
  for (const auto& layer : layers)
    for (const auto& s : layer) n_lo = std::min(n_lo, s.n_min());
  long avail = static_cast<long>(ncomp) * (order_q - n_lo + 1);
  long dim_le_l = 0;
  for (long w = 0; w <= lead_weight; w += 2) dim_le_l += mform_dim(w);
  if (avail < static_cast<long>(order + 1) * std::max(dim_le_l, 1l) + 10)
    throw TruncationUnderflow(
        "find_mlde: series truncation leaves too few coefficient equations; extend the input");

  Matrix<F> a(rows.size(), cols.size());
  for (std::size_t u = 0; u < cols.size(); ++u)
    for (std::size_t ci = 0; ci < ncomp; ++ci)
      for (const auto& [key, v] : cols[u][ci].terms())
        a(rows[{ci, key}], u) = v;

  KernelOutcome<F> out;
  out.stats.equations = rows.size();
  out.stats.unknowns = cols.size();
  if constexpr (field_traits<F>::exact) {
    out.kernel = nullspace_exact(std::move(a));
  } else {
    CMatrix ac(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j2 = 0; j2 < a.cols(); ++j2) ac(i, j2) = a(i, j2);
    out.kernel = rank_and_kernel(ac, Real("1e-10")).kernel;
  }
  out.stats.kernel_dim = out.kernel.size();
  return out;
}

template <class F>
Mlde<F> mlde_from_kernel(const std::vector<F>& vec, long k, int order, long lead_weight) {
  Mlde<F> out;
  out.order = order;
  out.lead_weight = lead_weight;
  out.base_weight = k;
  std::size_t idx = 0;
  for (int j = 0; j <= order; ++j) {
    GradedModularForm<F> gj;
    gj.weight = lead_weight + 2l * j;
    for (auto& m : mform_basis(gj.weight)) gj.set(m.first, m.second, vec[idx++]);
    out.g.push_back(std::move(gj));
  }
  // normalize: leading q-coefficient of g_0 becomes 1
  if (!out.g[0].is_zero()) {
    LogQSeries<F> q0 = out.g[0].q_expansion(8);
    F lead{};
    for (const auto& [key, v] : q0.terms()) { lead = v; break; }
    if (!field_traits<F>::is_zero(lead))
      for (auto& gj : out.g)
        for (auto& [m, c] : gj.coeffs) c = c / lead;
  }
  return out;
}

}  // namespace

template <class F>
Mlde<F> find_mlde(const std::vector<LogQSeries<F>>& comps, long k, int order, long lead_weight,
                  MldeSearchStats* stats) {
  KernelOutcome<F> out = mlde_kernel(comps, k, order, lead_weight);
  if (stats) *stats = out.stats;
  if (out.kernel.empty())
    throw NoSolution("find_mlde: the coefficient system has full rank");
  if (out.kernel.size() > 1) {
    std::ostringstream os;
    os << "find_mlde: kernel dimension " << out.kernel.size() << " (expected 1); "
       << out.stats.equations << " equations, " << out.stats.unknowns << " unknowns";
    throw AmbiguousKernel(os.str());
  }
  return mlde_from_kernel(out.kernel[0], k, order, lead_weight);
}

template <class F>
Mlde<F> minimal_mlde(const std::vector<LogQSeries<F>>& comps_in, long k, long max_lead_weight) {
  std::vector<LogQSeries<F>> comps;
  for (const auto& c : comps_in) comps.push_back(mlde_ready(c));

  // restrict to a basis of the span when the components are dependent
  std::size_t rank = series_rank(comps);
  if (rank < comps.size()) {
    std::vector<LogQSeries<F>> indep;
    for (const auto& c : comps) {
      auto probe = indep;
      probe.push_back(c);
      if (series_rank(probe) > indep.size()) indep.push_back(c);
      if (indep.size() == rank) break;
    }
    comps = std::move(indep);
  }

  for (int order = 1; order <= static_cast<int>(comps.size()); ++order) {
    for (long lw = 0; lw <= max_lead_weight; lw += 2) {
      if (mform_dim(lw) == 0) continue;
      KernelOutcome<F> out = mlde_kernel(comps, k, order, lw);
      if (out.kernel.empty()) continue;
      if (out.kernel.size() > 1) {
        std::ostringstream os;
        os << "minimal_mlde: kernel dimension " << out.kernel.size()
           << " at order " << order << ", leading weight " << lw << " (expected 1)";
        throw AmbiguousKernel(os.str());
      }
      Mlde<F> m = mlde_from_kernel(out.kernel[0], k, order, lw);
      if (m.g[0].is_zero()) continue;  // a lower-order relation in disguise
      return m;
    }
  }
  throw NoSolution("minimal_mlde: no MLDE found up to the weight bound");
}

template <class F>
Real mlde_residual(const Mlde<F>& mlde, const std::vector<LogQSeries<F>>& comps_in, long k) {
  std::vector<LogQSeries<F>> comps;
  for (const auto& c : comps_in) comps.push_back(mlde_ready(c));
  auto layers = d_iterates(comps, k, mlde.order);
  Real worst = 0;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    long order_q = layers[0][ci].order();
    LogQSeries<F> acc(comps[ci].mu(), order_q, comps[ci].basis());
    for (int j = 0; j <= mlde.order; ++j) {
      if (mlde.g[j].is_zero()) continue;
      LogQSeries<F> gq = mlde.g[j].q_expansion(order_q - std::min(0l, comps[ci].n_min()),
                                               comps[ci].basis());
      acc += (gq * layers[mlde.order - j][ci]).truncated(order_q);
    }
    for (const auto& [key, v] : acc.terms())
      worst = std::max(worst, field_traits<F>::abs_value(v));
  }
  return worst;
}

std::vector<long> hilbert_coefficients(const std::vector<long>& gen_weights, long k_hi) {
  // partition counts with parts 4 and 6
  std::vector<long> parts(k_hi + 1, 0);
  parts[0] = 1;
  for (long part : {4l, 6l})
    for (long n = part; n <= k_hi; ++n) parts[n] += parts[n - part];
  std::vector<long> out(k_hi + 1, 0);
  for (long kw : gen_weights)
    for (long n = std::max(kw, 0l); n <= k_hi; ++n) out[n] += parts[n - kw];
  return out;
}

HilbertReport hilbert_series_check(const std::vector<long>& gen_weights,
                                   const std::vector<long>& dims, long k_hi) {
  HilbertReport rep;
  rep.predicted = hilbert_coefficients(gen_weights, k_hi);
  rep.given = dims;
  rep.given.resize(k_hi + 1, 0);
  for (long kk = 0; kk <= k_hi; ++kk) {
    if (rep.predicted[kk] != rep.given[kk]) {
      rep.ok = false;
      rep.first_mismatch = kk;
      break;
    }
  }
  return rep;
}

std::vector<long> free_module_dims(const std::vector<std::vector<CSeries>>& gens,
                                   const std::vector<long>& gen_weights, long k_lo, long k_hi) {
  std::vector<long> out;
  long order = gens.empty() ? 0 : gens[0][0].order();
  MonomialCache<Cplx> cache(order, gens.empty() ? Basis::Binomial : gens[0][0].basis());
  for (long k = k_lo; k <= k_hi; k += 2) {
    std::vector<CSeries> flat;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      for (auto& m : mform_basis(k - gen_weights[j])) {
        const CSeries& mono = cache.get(m.first, m.second);
        for (const auto& comp : gens[j]) flat.push_back((mono * comp).truncated(order));
      }
    }
    if (flat.empty()) { out.push_back(0); continue; }
    // stack the component index into the column key
    std::size_t ncomp = gens[0].size();
    std::size_t nvec = flat.size() / ncomp;
    CMatrix mat;
    std::map<std::tuple<std::size_t, long, int>, std::size_t> colmap;
    for (std::size_t v = 0; v < nvec; ++v)
      for (std::size_t c = 0; c < ncomp; ++c)
        for (const auto& [key, val] : flat[v * ncomp + c].terms())
          colmap.emplace(std::make_tuple(c, key.first, key.second), colmap.size());
    mat = CMatrix(nvec, std::max<std::size_t>(colmap.size(), 1));
    for (std::size_t v = 0; v < nvec; ++v)
      for (std::size_t c = 0; c < ncomp; ++c)
        for (const auto& [key, val] : flat[v * ncomp + c].terms())
          mat(v, colmap[std::make_tuple(c, key.first, key.second)]) = val;
    out.push_back(static_cast<long>(rank_and_kernel(mat, Real("1e-8")).rank));
  }
  return out;
}

// explicit instantiations
template struct GradedModularForm<Cplx>;
template struct GradedModularForm<GaussRat>;
template std::vector<std::vector<CSeries>> d_iterates(const std::vector<CSeries>&, long, int);
template std::vector<std::vector<QSeries>> d_iterates(const std::vector<QSeries>&, long, int);
template Mlde<Cplx> find_mlde(const std::vector<CSeries>&, long, int, long, MldeSearchStats*);
template Mlde<GaussRat> find_mlde(const std::vector<QSeries>&, long, int, long, MldeSearchStats*);
template Mlde<Cplx> minimal_mlde(const std::vector<CSeries>&, long, long);
template Mlde<GaussRat> minimal_mlde(const std::vector<QSeries>&, long, long);
template Real mlde_residual(const Mlde<Cplx>&, const std::vector<CSeries>&, long);
template Real mlde_residual(const Mlde<GaussRat>&, const std::vector<QSeries>&, long);

}  // namespace logvvmf
