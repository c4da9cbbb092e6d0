#include "logvvmf/logq.hpp"

#include <sstream>

namespace logvvmf {

namespace {

std::string coeff_str(const Cplx& v) {
  std::ostringstream os;
  os << "(" << v.re.str(8) << (v.im < 0 ? "" : "+") << v.im.str(8) << "i)";
  return os.str();
}
std::string coeff_str(const GaussRat& v) {
  std::ostringstream os;
  if (v.im == 0) os << v.re.get_str();
  else os << "(" << v.re.get_str() << (v.im < 0 ? "" : "+") << v.im.get_str() << "i)";
  return os.str();
}

Cplx two_pi_i() { return Cplx(Real(0), 2 * pi_value()); }
Cplx w_factor() { return inv(two_pi_i()); }  // 1/(2 pi i)

Rat factorial_rat(int n) {
  Rat f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

template <class F>
LogQSeries<F> LogQSeries<F>::convert(Basis target) const {
  if (target == basis_) return *this;
  if (max_tau_degree() == 0) {  // pure q-series: a relabel
    LogQSeries out(mu_, order_, target);
    for (const auto& [k, v] : terms_) out.add_coeff(k.first, k.second, v);
    return out;
  }
  if constexpr (field_traits<F>::exact) {
    if (target == Basis::ScaledLog || basis_ == Basis::ScaledLog)
      throw Error("convert: scaled-log conversions scale by powers of 2 pi i; "
                  "not available in exact mode (see reinterpret_power_as_scaledlog)");
  }

  // group coefficients per n
  std::map<long, std::vector<F>> rows;
  for (const auto& [k, v] : terms_) {
    auto& row = rows[k.first];
    if (static_cast<int>(row.size()) <= k.second) row.resize(k.second + 1, F(0));
    row[k.second] = v;
  }

  auto power_rows_from_binomial = [&](const std::vector<F>& row) {
    std::vector<F> out(row.size(), F(0));
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (field_traits<F>::is_zero(row[j])) continue;
      const PolyQ pj = binom_poly(static_cast<int>(j));
      for (int t = 0; t <= pj.degree(); ++t)
        out[t] += row[j] * field_traits<F>::from_rat(pj.coeff(t));
    }
    return out;
  };
  auto binomial_rows_from_power = [&](const std::vector<F>& row) {
    // forward differences of t -> sum_j c_j t^j at t = 0..D
    int d = static_cast<int>(row.size()) - 1;
    std::vector<F> vals(d + 1, F(0));
    for (int t = 0; t <= d; ++t) {
      F tv = F(1);
      F tf = field_traits<F>::from_long(t);
      for (int j = 0; j <= d; ++j) {
        vals[t] += row[j] * tv;
        tv = tv * tf;
      }
    }
    std::vector<F> out(d + 1);
    for (int j = 0; j <= d; ++j) {
      out[j] = vals[0];
      for (std::size_t t = 0; t + 1 < vals.size(); ++t) vals[t] = vals[t + 1] - vals[t];
      vals.pop_back();
    }
    return out;
  };

  LogQSeries out(mu_, order_, target);
  for (auto& [n, row] : rows) {
    std::vector<F> power;
    switch (basis_) {
      case Basis::Binomial: power = power_rows_from_binomial(row); break;
      case Basis::Power: power = row; break;
      case Basis::ScaledLog: {
        power = row;
        if constexpr (!field_traits<F>::exact) {
          Cplx tpi = two_pi_i();
          for (std::size_t j = 0; j < power.size(); ++j)
            power[j] = power[j] * pow_int(tpi, -static_cast<long>(j)) *
                       field_traits<F>::from_rat(factorial_rat(static_cast<int>(j)));
        }
        break;
      }
    }
    std::vector<F> dst;
    switch (target) {
      case Basis::Binomial: dst = binomial_rows_from_power(power); break;
      case Basis::Power: dst = power; break;
      case Basis::ScaledLog: {
        dst = power;
        if constexpr (!field_traits<F>::exact) {
          Cplx tpi = two_pi_i();
          for (std::size_t j = 0; j < dst.size(); ++j)
            dst[j] = dst[j] * pow_int(tpi, static_cast<long>(j)) /
                     field_traits<F>::from_rat(factorial_rat(static_cast<int>(j)));
        }
        break;
      }
    }
    for (std::size_t j = 0; j < dst.size(); ++j)
      out.add_coeff(n, static_cast<int>(j), dst[j]);
  }
  return out;
}

template <class F>
std::string LogQSeries<F>::str(int show_terms) const {
  std::ostringstream os;
  os << "[mu=" << mu_.get_str() << " order=" << order_ << " basis=" << basis_name(basis_) << "]";
  int shown = 0;
  for (const auto& [k, v] : terms_) {
    if (shown++ >= show_terms) { os << " + ..."; break; }
    os << " + " << coeff_str(v);
    if (k.second > 0) os << "*L" << k.second;
    os << "*q^(" << k.first << (mu_ == 0 ? "" : "+" + mu_.get_str()) << ")";
  }
  if (terms_.empty()) os << " 0";
  return os.str();
}

template <class F>
LogQSeries<F> theta(const LogQSeries<F>& f) {
  LogQSeries<F> out(f.mu(), f.order(), f.basis());
  for (const auto& [k, v] : f.terms()) {
    Rat s = Rat(k.first) + f.mu();
    if (s != 0) out.add_coeff(k.first, k.second, v * field_traits<F>::from_rat(s));
    if (k.second == 0) continue;
    switch (f.basis()) {
      case Basis::ScaledLog:
        out.add_coeff(k.first, k.second - 1, v);
        break;
      case Basis::Power:
        if constexpr (field_traits<F>::exact) {
          throw Error("theta: positive tau-degree in the power basis needs the "
                      "complex field or the scaled-log basis");
        } else {
          out.add_coeff(k.first, k.second - 1,
                        v * F(w_factor()) * field_traits<F>::from_long(k.second));
        }
        break;
      case Basis::Binomial:
        if constexpr (field_traits<F>::exact) {
          throw Error("theta: positive tau-degree in the binomial basis needs the "
                      "complex field or the scaled-log basis");
        } else {
          auto dexp = binom_derivative_expansion(k.second);
          for (std::size_t u = 0; u < dexp.size(); ++u)
            if (dexp[u] != 0)
              out.add_coeff(k.first, static_cast<int>(u),
                            v * F(w_factor()) * field_traits<F>::from_rat(dexp[u]));
        }
        break;
    }
  }
  return out;
}

template <class F>
LogQSeries<F> modular_derivative(const LogQSeries<F>& f, long k) {
  LogQSeries<F> th = theta(f);
  if (k == 0) return th;
  long p_order = f.order() - std::min(f.n_min(), 0L);
  LogQSeries<F> p = eisenstein<F>(ClassicalSeries::P, p_order, f.basis());
  return th + (p * f).scaled(field_traits<F>::from_long(k)).truncated(f.order());
}

template <class F>
LogQSeries<F> eisenstein(ClassicalSeries which, long order, Basis basis) {
  if (order < 0) throw std::invalid_argument("eisenstein: order must be >= 0");
  auto sigma = [&](int kk) {
    std::vector<Int> s(order + 1, Int(0));
    for (long d = 1; d <= order; ++d) {
      Int dk;
      mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(kk));
      for (long n = d; n <= order; n += d) s[n] += dk;
    }
    return s;
  };
  auto build = [&](const Rat& c0, long scale, int kk) {
    LogQSeries<F> out(Rat(0), order, basis);
    out.add_coeff(0, 0, field_traits<F>::from_rat(c0));
    auto s = sigma(kk);
    for (long n = 1; n <= order; ++n)
      out.add_coeff(n, 0, field_traits<F>::from_rat(Rat(scale * s[n])));
    return out;
  };
  switch (which) {
    case ClassicalSeries::E4: return build(Rat(1), 240, 3);
    case ClassicalSeries::E6: return build(Rat(1), -504, 5);
    case ClassicalSeries::P: return build(make_rat(-1, 12), 2, 1);
    case ClassicalSeries::Delta: {
      auto e4 = eisenstein<F>(ClassicalSeries::E4, order, basis);
      auto e6 = eisenstein<F>(ClassicalSeries::E6, order, basis);
      return (e4 * e4 * e4 - e6 * e6).scaled(field_traits<F>::from_rat(make_rat(1, 1728)));
    }
  }
  throw std::invalid_argument("eisenstein: unknown series");
}

template <class F>
std::vector<LogQSeries<F>> g_to_h(const std::vector<LogQSeries<F>>& g) {
  const int m = static_cast<int>(g.size());
  for (const auto& s : g) {
    if (s.mu() != g[0].mu() || s.basis() != Basis::Binomial)
      throw BlockMismatch("g_to_h: equal mu and binomial basis required");
  }
  std::vector<LogQSeries<F>> h;
  for (int i = 0; i < m; ++i) {
    LogQSeries<F> acc(g[0].mu(), g[0].order(), Basis::Binomial);
    for (int t = 0; t <= i; ++t) {
      // (-1)^t binom(tau + t - 1, t)
      std::vector<Rat> coeffs = binom_shift_expansion(make_rat(t - 1), t);
      if (t % 2 == 1)
        for (auto& c : coeffs) c = -c;
      acc += g[i - t].mul_binomial_tau_poly(coeffs);
    }
    h.push_back(std::move(acc));
  }
  return h;
}

template <class F>
std::vector<LogQSeries<F>> h_to_g(const std::vector<LogQSeries<F>>& h) {
  const int m = static_cast<int>(h.size());
  for (const auto& s : h) {
    if (s.mu() != h[0].mu() || s.basis() != Basis::Binomial)
      throw BlockMismatch("h_to_g: equal mu and binomial basis required");
  }
  std::vector<LogQSeries<F>> g;
  for (int i = 0; i < m; ++i) {
    LogQSeries<F> acc(h[0].mu(), h[0].order(), Basis::Binomial);
    for (int t = 0; t <= i; ++t) {
      std::vector<Rat> unit(t + 1, Rat(0));
      unit[t] = 1;
      acc += h[i - t].mul_binomial_tau_poly(unit);
    }
    g.push_back(std::move(acc));
  }
  return g;
}

EvalResult evaluate(const CSeries& f, const Cplx& tau) {
  using boost::multiprecision::exp;
  if (!(tau.im > 0)) throw std::invalid_argument("evaluate: Im(tau) must be positive");
  Cplx tpi = two_pi_i();
  Cplx q = logvvmf::exp(tpi * tau);
  Cplx qmu = logvvmf::exp(tpi * tau * Cplx(to_real(f.mu())));
  int dmax = f.max_tau_degree();
  std::vector<Cplx> taupows(dmax + 1);
  for (int j = 0; j <= dmax; ++j) {
    switch (f.basis()) {
      case Basis::Binomial: taupows[j] = binom_poly(j).evaluate<Cplx>(tau); break;
      case Basis::Power: taupows[j] = pow_int(tau, j); break;
      case Basis::ScaledLog:
        taupows[j] = pow_int(tpi * tau, j) / Cplx(to_real(factorial_rat(j)));
        break;
    }
  }
  CompensatedCplx acc;
  long cur_n = 0;
  Cplx qn(1);
  bool have_qn = false;
  Real last_row_mag = 0;
  long n_last = f.is_zero() ? 0 : f.n_max();
  for (const auto& [k, v] : f.terms()) {
    if (!have_qn || k.first != cur_n) {
      qn = pow_int(q, k.first);
      cur_n = k.first;
      have_qn = true;
    }
    Cplx term = v * taupows[k.second] * qn * qmu;
    acc.add(term);
    if (k.first == n_last) last_row_mag += abs(v * taupows[k.second]);
  }
  EvalResult out;
  out.value = acc.value();
  Real r = abs(q);
  out.tail_bound = last_row_mag * abs(pow_int(q, n_last) * qmu) * r / (1 - r);
  return out;
}

CSeries to_cplx_series(const QSeries& f) {
  CSeries out(f.mu(), f.order(), f.basis());
  for (const auto& [k, v] : f.terms()) out.add_coeff(k.first, k.second, to_cplx(v));
  return out;
}

template <class F>
LogQSeries<F> reinterpret_power_as_scaledlog(const LogQSeries<F>& f) {
  if (f.basis() != Basis::Power)
    throw BlockMismatch("reinterpret_power_as_scaledlog: power-basis input required");
  int deg = -1;
  for (const auto& [k, v] : f.terms()) {
    (void)v;
    if (deg == -1) deg = k.second;
    else if (k.second != deg)
      throw Error("reinterpret_power_as_scaledlog: tau-part must be a single monomial");
  }
  LogQSeries<F> out(f.mu(), f.order(), Basis::ScaledLog);
  for (const auto& [k, v] : f.terms()) out.add_coeff(k.first, k.second, v);
  return out;
}

// explicit instantiations
template class LogQSeries<Cplx>;
template class LogQSeries<GaussRat>;

template CSeries theta(const CSeries&);
template QSeries theta(const QSeries&);
template CSeries modular_derivative(const CSeries&, long);
template QSeries modular_derivative(const QSeries&, long);
template CSeries eisenstein<Cplx>(ClassicalSeries, long, Basis);
template QSeries eisenstein<GaussRat>(ClassicalSeries, long, Basis);
template std::vector<CSeries> g_to_h(const std::vector<CSeries>&);
template std::vector<QSeries> g_to_h(const std::vector<QSeries>&);
template std::vector<CSeries> h_to_g(const std::vector<CSeries>&);
template std::vector<QSeries> h_to_g(const std::vector<QSeries>&);
template CSeries reinterpret_power_as_scaledlog(const CSeries&);
template QSeries reinterpret_power_as_scaledlog(const QSeries&);

}  // namespace logvvmf
