#pragma once

// Scalar types used throughout: arbitrary-size integers and rationals (GMP),
// a runtime-precision real type (MPFR via boost.multiprecision), a complex
// type built on it, and exact Gaussian rationals for the rational-mode paths.

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace logvvmf {

using Int = mpz_class;
using Rat = mpq_class;
using Real = boost::multiprecision::mpfr_float;

// Default working precision, decimal digits.
inline constexpr unsigned kDefaultDigits = 34;

inline unsigned working_digits() { return Real::default_precision(); }
inline void set_working_digits(unsigned digits10) {
  Real::default_precision(digits10 ? digits10 : kDefaultDigits);
}

// Scoped precision override; restores the previous thread-local value.
struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned digits10) : saved(Real::default_precision()) {
    if (digits10) Real::default_precision(digits10);
  }
  ~PrecisionGuard() { Real::default_precision(saved); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
};

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Real to_real(const Int& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline Real to_real(const Rat& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline Real pi_value() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

inline Real eps_value() {
  // 10^(1-digits10), a convenient working-precision epsilon.
  Real e = pow(Real(10), -static_cast<long>(working_digits()) + 1);
  return e;
}

struct Cplx {
  Real re, im;

  Cplx() : re(0), im(0) {}
  Cplx(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Cplx(Real r) : re(std::move(r)), im(0) {}  // NOLINT
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Cplx operator-() const { return Cplx(-re, -im); }
  Cplx conj() const { return Cplx(re, -im); }

  Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
  Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
  Cplx& operator*=(const Cplx& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Cplx& operator/=(const Cplx& o) {
    Real n = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }

  friend Cplx operator+(Cplx a, const Cplx& b) { a += b; return a; }
  friend Cplx operator-(Cplx a, const Cplx& b) { a -= b; return a; }
  friend Cplx operator*(Cplx a, const Cplx& b) { a *= b; return a; }
  friend Cplx operator/(Cplx a, const Cplx& b) { a /= b; return a; }
  friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }
};

inline Real abs(const Cplx& z) {
  using boost::multiprecision::hypot;
  return hypot(z.re, z.im);
}

inline Real norm(const Cplx& z) { return z.re * z.re + z.im * z.im; }

// e^{i theta}
inline Cplx cis(const Real& theta) {
  Real c, s;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), theta.backend().data(), MPFR_RNDN);
  return Cplx(std::move(c), std::move(s));
}

inline Cplx exp(const Cplx& z) {
  using boost::multiprecision::exp;
  Real m = exp(z.re);
  Cplx u = cis(z.im);
  return Cplx(m * u.re, m * u.im);
}

// z^k for integer k (binary powering; negative exponents via one division).
inline Cplx pow_int(const Cplx& z, long k) {
  bool neg = k < 0;
  unsigned long e = neg ? static_cast<unsigned long>(-(k + 1)) + 1ul : static_cast<unsigned long>(k);
  Cplx acc(1);
  Cplx base = z;
  while (e) {
    if (e & 1ul) acc *= base;
    base *= base;
    e >>= 1;
  }
  if (neg) acc = Cplx(1) / acc;
  return acc;
}

inline Cplx inv(const Cplx& z) { return Cplx(1) / z; }

// Exact complex rationals; the coefficient field of the rational-mode series.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat operator-() const { return GaussRat(Rat(-re), Rat(-im)); }
  GaussRat conj() const { return GaussRat(re, Rat(-im)); }

  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("GaussRat: division by zero");
    Rat r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { a *= b; return a; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { a /= b; return a; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline Cplx to_cplx(const GaussRat& g) { return Cplx(to_real(g.re), to_real(g.im)); }

// Field traits used by the templated series/matrix code.
template <class F>
struct field_traits;

template <>
struct field_traits<Cplx> {
  static constexpr bool exact = false;
  static Cplx from_long(long v) { return Cplx(v); }
  static Cplx from_rat(const Rat& q) { return Cplx(to_real(q)); }
  static Cplx from_int(const Int& z) { return Cplx(to_real(z)); }
  static bool is_zero(const Cplx& v) { return v.is_zero(); }
  static Real abs_value(const Cplx& v) { return abs(v); }
};

template <>
struct field_traits<GaussRat> {
  static constexpr bool exact = true;
  static GaussRat from_long(long v) { return GaussRat(v); }
  static GaussRat from_rat(const Rat& q) { return GaussRat(q); }
  static GaussRat from_int(const Int& z) { return GaussRat(Rat(z)); }
  static bool is_zero(const GaussRat& v) { return v.is_zero(); }
  static Real abs_value(const GaussRat& v) { return abs(to_cplx(v)); }
};

// Decimal-string formatting at full working precision (deterministic output).
std::string to_decimal_string(const Real& x);
std::string to_decimal_string(const Rat& q);

// Parses "p/q", integers, and plain decimal strings into an exact rational.
Rat parse_rational(const std::string& s);
Real parse_real(const std::string& s);

// Neumaier compensated accumulator for one Real component.
struct Compensated {
  Real sum{0}, comp{0};
  void add(const Real& v) {
    using boost::multiprecision::abs;
    Real t = sum + v;
    if (abs(sum) >= abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = std::move(t);
  }
  Real value() const { return sum + comp; }
};

// Component-wise compensated complex accumulator.
struct CompensatedCplx {
  Compensated re, im;
  void add(const Cplx& z) { re.add(z.re); im.add(z.im); }
  Cplx value() const { return Cplx(re.value(), im.value()); }
};

}  // namespace logvvmf
