#pragma once

// Logarithmic q-series: finite sums over tau-degree j of poly(tau) times
// fractional q-powers q^{n+mu}, with coefficients in an exact field
// (GaussRat) or in MPFR complex (Cplx). The tau-polynomial part is kept in
// one of three bases:
//   Binomial:  binom(tau, j)              (canonical)
//   Power:     tau^j = ((log q)/(2 pi i))^j
//   ScaledLog: (log q)^j / j!             (theta acts rationally here)

#include "logvvmf/binom.hpp"
#include "logvvmf/errors.hpp"
#include "logvvmf/numeric.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace logvvmf {

enum class Basis { Binomial, Power, ScaledLog };
enum class InfinityClass { Meromorphic, Holomorphic, Cuspidal };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::Binomial: return "binomial";
    case Basis::Power: return "power";
    case Basis::ScaledLog: return "scaledlog";
  }
  return "?";
}

inline const char* infinity_class_name(InfinityClass c) {
  switch (c) {
    case InfinityClass::Meromorphic: return "meromorphic";
    case InfinityClass::Holomorphic: return "holomorphic";
    case InfinityClass::Cuspidal: return "cuspidal";
  }
  return "?";
}

template <class F>
class LogQSeries {
 public:
  using Key = std::pair<long, int>;  // (n, tau-degree j); exponent is n + mu
  using TermMap = std::map<Key, F>;

  LogQSeries() : mu_(0), order_(0), basis_(Basis::Binomial) {}
  LogQSeries(Rat mu, long order, Basis basis = Basis::Binomial)
      : mu_(std::move(mu)), order_(order), basis_(basis) {
    if (mu_ < 0 || mu_ >= 1) throw std::invalid_argument("LogQSeries: mu must lie in [0,1)");
  }

  static LogQSeries constant(const F& v, long order, Basis basis = Basis::Binomial) {
    LogQSeries s(Rat(0), order, basis);
    s.add_coeff(0, 0, v);
    return s;
  }

  const Rat& mu() const { return mu_; }
  long order() const { return order_; }
  Basis basis() const { return basis_; }
  const TermMap& terms() const& { return terms_; }
  const TermMap& terms() const&& = delete;  // no iterating a temporary
  bool is_zero() const { return terms_.empty(); }

  F coeff(long n, int j) const {
    auto it = terms_.find({n, j});
    return it == terms_.end() ? F(0) : it->second;
  }

  void add_coeff(long n, int j, const F& v) {
    if (j < 0) throw std::invalid_argument("LogQSeries: tau-degree must be >= 0");
    if (n > order_) return;  // beyond the truncation horizon
    auto it = terms_.find({n, j});
    if (it == terms_.end()) {
      if (!field_traits<F>::is_zero(v)) terms_.emplace(Key{n, j}, v);
    } else {
      it->second += v;
      if (field_traits<F>::is_zero(it->second)) terms_.erase(it);
    }
  }
  void set_coeff(long n, int j, const F& v) {
    terms_.erase(Key{n, j});
    add_coeff(n, j, v);
  }

  long n_min() const { return terms_.empty() ? 0 : terms_.begin()->first.first; }
  long n_max() const { return terms_.empty() ? 0 : terms_.rbegin()->first.first; }
  int max_tau_degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, k.second);
    return d;
  }

  LogQSeries truncated(long new_order) const {
    LogQSeries out(mu_, std::min(order_, new_order), basis_);
    for (const auto& [k, v] : terms_)
      if (k.first <= new_order) out.terms_.emplace(k, v);
    return out;
  }

  LogQSeries operator-() const {
    LogQSeries out = *this;
    for (auto& [k, v] : out.terms_) v = -v;
    return out;
  }

  LogQSeries& operator+=(const LogQSeries& o) {
    require_same_grading(o, "add");
    order_ = std::min(order_, o.order_);
    for (const auto& [k, v] : o.terms_) add_coeff(k.first, k.second, v);
    // drop terms beyond the tightened horizon
    for (auto it = terms_.begin(); it != terms_.end();)
      it = (it->first.first > order_) ? terms_.erase(it) : std::next(it);
    return *this;
  }
  friend LogQSeries operator+(LogQSeries a, const LogQSeries& b) { a += b; return a; }
  friend LogQSeries operator-(LogQSeries a, const LogQSeries& b) { a += -b; return a; }

  LogQSeries scaled(const F& s) const {
    LogQSeries out(mu_, order_, basis_);
    if (field_traits<F>::is_zero(s)) return out;
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * s);
    return out;
  }

  friend LogQSeries operator*(const LogQSeries& a, const LogQSeries& b) {
    if (a.basis_ != b.basis_) throw BlockMismatch("series product: basis mismatch");
    Rat mu_sum = a.mu_ + b.mu_;
    long carry = 0;
    if (mu_sum >= 1) { mu_sum -= 1; carry = 1; }
    long a_lo = a.is_zero() ? 0 : a.n_min();
    long b_lo = b.is_zero() ? 0 : b.n_min();
    long order = std::min(a.order_ + b_lo, b.order_ + a_lo) + carry;
    if (order < 0)
      throw TruncationUnderflow("series product: no exact coefficients survive truncation");
    LogQSeries out(mu_sum, order, a.basis_);
    // cache for binomial-basis tau products
    std::map<std::pair<int, int>, std::vector<F>> cache;
    for (const auto& [ka, va] : a.terms_)
      for (const auto& [kb, vb] : b.terms_) {
        long n = ka.first + kb.first + carry;
        if (n > order) continue;
        F prod = va * vb;
        int ja = ka.second, jb = kb.second;
        switch (a.basis_) {
          case Basis::Power:
            out.add_coeff(n, ja + jb, prod);
            break;
          case Basis::ScaledLog:
            out.add_coeff(n, ja + jb,
                          prod * field_traits<F>::from_rat(binom_rat(make_rat(ja + jb), ja)));
            break;
          case Basis::Binomial: {
            auto key = std::minmax(ja, jb);
            auto it = cache.find(key);
            if (it == cache.end()) {
              auto exp = binom_product_expansion(key.first, key.second);
              std::vector<F> fexp(exp.size());
              for (std::size_t c = 0; c < exp.size(); ++c)
                fexp[c] = field_traits<F>::from_rat(exp[c]);
              it = cache.emplace(key, std::move(fexp)).first;
            }
            for (std::size_t c = 0; c < it->second.size(); ++c)
              if (!field_traits<F>::is_zero(it->second[c]))
                out.add_coeff(n, static_cast<int>(c), prod * it->second[c]);
            break;
          }
        }
      }
    return out;
  }

  // Multiplies by the tau-polynomial sum_u binom_coeffs[u] * binom(tau, u).
  // Binomial basis only.
  LogQSeries mul_binomial_tau_poly(const std::vector<Rat>& binom_coeffs) const {
    if (basis_ != Basis::Binomial)
      throw BlockMismatch("mul_binomial_tau_poly: binomial basis required");
    LogQSeries out(mu_, order_, basis_);
    for (std::size_t u = 0; u < binom_coeffs.size(); ++u) {
      if (binom_coeffs[u] == 0) continue;
      F cu = field_traits<F>::from_rat(binom_coeffs[u]);
      for (const auto& [k, v] : terms_) {
        auto exp = binom_product_expansion(static_cast<int>(u), k.second);
        for (std::size_t c = 0; c < exp.size(); ++c)
          if (exp[c] != 0)
            out.add_coeff(k.first, static_cast<int>(c),
                          v * cu * field_traits<F>::from_rat(exp[c]));
      }
    }
    return out;
  }

  LogQSeries convert(Basis target) const;

  std::string str(int show_terms = 12) const;

 private:
  void require_same_grading(const LogQSeries& o, const char* what) const {
    if (mu_ != o.mu_)
      throw BlockMismatch(std::string(what) +
                          ": series with different mu live in different graded pieces");
    if (basis_ != o.basis_) throw BlockMismatch(std::string(what) + ": basis mismatch");
  }

  Rat mu_;
  long order_;
  Basis basis_;
  TermMap terms_;
};

using CSeries = LogQSeries<Cplx>;
using QSeries = LogQSeries<GaussRat>;

// ---- differential operators -------------------------------------------

// theta = q d/dq. On the scaled-log basis theta(e_j q^s) = s e_j q^s +
// e_{j-1} q^s, which stays rational; on the power/binomial bases the
// tau-derivative contributes a 1/(2 pi i) factor, so positive tau-degrees
// need the complex field there.
template <class F>
LogQSeries<F> theta(const LogQSeries<F>& f);

// D_k f = theta(f) + k P f, weight k -> k+2.
template <class F>
LogQSeries<F> modular_derivative(const LogQSeries<F>& f, long k);

// ---- classical series --------------------------------------------------

enum class ClassicalSeries { E4, E6, Delta, P };

template <class F>
LogQSeries<F> eisenstein(ClassicalSeries which, long order, Basis basis = Basis::Binomial);

// ---- block transforms ---------------------------------------------------

// h = B_m(tau) g for one modified Jordan block: h_j = sum_t (-1)^t
// binom(tau+t-1, t) g_{j-t}. Input in the binomial basis, equal mu/order.
template <class F>
std::vector<LogQSeries<F>> g_to_h(const std::vector<LogQSeries<F>>& g);

// g_j = sum_t binom(tau, t) h_{j-t}; exact inverse of g_to_h.
template <class F>
std::vector<LogQSeries<F>> h_to_g(const std::vector<LogQSeries<F>>& h);

// ---- classification and evaluation --------------------------------------

template <class F>
InfinityClass classify_at_infinity(const LogQSeries<F>& f) {
  bool nonpos = false;
  for (const auto& [k, v] : f.terms()) {
    Rat expo = Rat(k.first) + f.mu();
    if (expo < 0) return InfinityClass::Meromorphic;
    if (expo == 0) nonpos = true;
  }
  return nonpos ? InfinityClass::Holomorphic : InfinityClass::Cuspidal;
}

struct EvalResult {
  Cplx value;
  Real tail_bound;  // first-omitted-term heuristic
};

EvalResult evaluate(const CSeries& f, const Cplx& tau);

CSeries to_cplx_series(const QSeries& f);

// Exact-mode relabel: a power-basis series whose tau-part is a single
// monomial tau^J is reinterpreted on the scaled-log basis e_J. The result
// is a scalar multiple (by (2 pi i)^J / J!) of the original function, which
// is what the exact MLDE paths need.
template <class F>
LogQSeries<F> reinterpret_power_as_scaledlog(const LogQSeries<F>& f);

}  // namespace logvvmf
