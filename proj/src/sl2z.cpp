#include "logvvmf/sl2z.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace logvvmf {

GammaElement::GammaElement(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1)
    throw std::invalid_argument("GammaElement: determinant must be 1");
}

GammaElement GammaElement::operator*(const GammaElement& o) const {
  return GammaElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                      c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

Cplx GammaElement::mobius(const Cplx& tau) const {
  if (!(tau.im > 0)) throw std::invalid_argument("mobius: Im(tau) must be positive");
  Cplx num = Cplx(to_real(a_)) * tau + Cplx(to_real(b_));
  Cplx den = Cplx(to_real(c_)) * tau + Cplx(to_real(d_));
  return num / den;
}

Cplx GammaElement::cocycle(const Cplx& tau) const {
  return Cplx(to_real(c_)) * tau + Cplx(to_real(d_));
}

std::string GammaElement::str() const {
  std::ostringstream os;
  os << "[" << a_ << " " << b_ << "; " << c_ << " " << d_ << "]";
  return os.str();
}

bool EichlerWord::strict() const {
  if (exponents.empty()) return false;
  for (std::size_t j = 1; j < exponents.size(); ++j) {
    int want = (j % 2 == 1) ? 1 : -1;
    if (sgn(exponents[j]) != want) return false;
  }
  return true;
}

GammaElement reconstruct(const EichlerWord& w) {
  GammaElement acc = GammaElement::identity();
  // gamma = (ST^{l_v}) ... (ST^{l_0})
  for (std::size_t j = w.exponents.size(); j-- > 0;) {
    const Int& l = w.exponents[j];
    if (j + 1 == w.exponents.size())
      acc = GammaElement::S() * GammaElement::T_pow(l);
    else
      acc = acc * (GammaElement::S() * GammaElement::T_pow(l));
  }
  return acc;
}

Int eichler_length(const EichlerWord& w) {
  if (w.exponents.empty()) throw std::invalid_argument("eichler_length: empty word");
  Int v = static_cast<long>(w.exponents.size()) - 1;
  return (w.exponents[0] != 0) ? Int(2 * v + 2) : Int(2 * v + 1);
}

namespace {

// Sign pattern of the c-sequence of a strict word: c_0 = 1, c_1 = l_1,
// c_{j+1} = l_{j+1} c_j - c_{j-1}. The alternation constraint forces
// sign(c_j) = + for j mod 4 in {0,1} and - otherwise, with |c_j| strictly
// increasing from j = 1 on.
int seq_sign(int j_mod4) { return (j_mod4 == 0 || j_mod4 == 1) ? 1 : -1; }

}  // namespace

std::optional<EichlerWord> eichler_try_strict(const GammaElement& g) {
  const Int& a = g.a();
  const Int& c = g.c();
  if (c == 0) return std::nullopt;

  // depth 0: g = ST^{l_0} = (0,-1;1,l_0)
  if (a == 0) {
    if (c != 1) return std::nullopt;
    return EichlerWord{{g.d()}};
  }

  // Phase: v mod 4 from the signs of (c_v, c_{v-1}) = (c, -a).
  int sc = sgn(c), sa = sgn(a);
  int v_mod4;
  if (sc > 0 && sa > 0) v_mod4 = 0;
  else if (sc > 0 && sa < 0) v_mod4 = 1;
  else if (sc < 0 && sa < 0) v_mod4 = 2;
  else v_mod4 = 3;

  Int u = c;        // c_{j+1}
  Int w = -a;       // c_j
  int jw = ((v_mod4 - 1) % 4 + 4) % 4;  // position of w, mod 4
  if (sgn(u) != seq_sign((jw + 1) % 4) || sgn(w) != seq_sign(jw)) return std::nullopt;

  std::vector<Int> quotients;  // l_v, l_{v-1}, ..., l_2
  Int l1;
  for (;;) {
    Int absw = abs(w);
    if (absw == 1) {
      if (jw == 0) {
        // (u, w) = (c_1, c_0); c_0 must be +1 and l_1 = c_1 > 0
        if (w != 1 || sgn(u) <= 0) return std::nullopt;
        l1 = u;
        break;
      }
      if (jw == 1) {
        // w = c_1 = 1; the last step is the nonstandard division giving c_0 = 1
        if (w != 1) return std::nullopt;
        quotients.push_back(u + 1);  // l_2 = (c_2 + c_0)/c_1
        l1 = 1;
        break;
      }
      return std::nullopt;
    }
    if (abs(u) <= absw) return std::nullopt;
    int rho = seq_sign(((jw - 1) % 4 + 4) % 4);
    // remainder r = l*w - u with sign rho and 0 < |r| < |w|
    Int r0;
    mpz_mod(r0.get_mpz_t(), Int(-u).get_mpz_t(), absw.get_mpz_t());  // r0 in [0,|w|)
    if (r0 == 0) return std::nullopt;
    Int r = (rho > 0) ? r0 : Int(r0 - absw);
    Int l = (u + r) / w;
    quotients.push_back(l);
    u = w;
    w = r;
    jw = (jw + 3) % 4;
  }

  // Assemble [l_v ... l_2, l_1], peel the word off g to recover l_0.
  std::vector<Int> top = quotients;
  top.push_back(l1);
  GammaElement x = g;
  for (const Int& l : top) {
    // (ST^l)^{-1} * x
    x = GammaElement::T_pow(-l) * GammaElement::S().inverse() * x;
  }
  if (!(x.a() == 0 && x.b() == -1 && x.c() == 1)) return std::nullopt;

  EichlerWord word;
  word.exponents.push_back(x.d());  // l_0
  for (std::size_t i = top.size(); i-- > 0;) word.exponents.push_back(top[i]);
  if (!word.strict()) return std::nullopt;
  if (!(reconstruct(word) == g)) return std::nullopt;
  return word;
}

EichlerParts eichler_decompose_parts(const GammaElement& g) {
  EichlerParts parts;
  if (auto w = eichler_try_strict(g)) {
    parts.word = *w;
    parts.core = *w;
    parts.core_elem = g;
    parts.is_strict = true;
    return parts;
  }

  // c = 0: g = +-T^m, written as S^4 T^m or S^2 T^m.
  if (g.c() == 0) {
    if (g.a() == 1) {
      parts.t_prefix = g.b();
      parts.s_power = 0;
      parts.word.exponents = {g.b(), 0, 0, 0};
    } else {
      parts.t_prefix = -g.b();
      parts.s_power = 2;
      parts.word.exponents = {Int(-g.b()), 0};
    }
    if (!(reconstruct(parts.word) == g))
      throw std::logic_error("eichler_decompose: T-power convention failed");
    return parts;
  }

  // Otherwise g = S^{2s} T^pre * core with a strict core; the prefix is
  // spelled with zero exponents at the top of the word (S^2 = -I, S^4 = I).
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), g.a().get_mpz_t(), g.c().get_mpz_t());
  const Int pres[3] = {q, Int(q + 1), Int(q - 1)};
  for (const Int& pre : pres) {
    GammaElement shifted = GammaElement::T_pow(-pre) * g;
    for (int s : {0, 2}) {
      GammaElement target = (s == 0) ? shifted : shifted.negated();
      if (auto w = eichler_try_strict(target)) {
        parts.core = *w;
        parts.core_elem = target;
        parts.t_prefix = pre;
        parts.s_power = s;
        parts.word.exponents = w->exponents;
        parts.word.exponents.push_back(pre);
        int zeros = (s == 0) ? 3 : 1;
        for (int z = 0; z < zeros; ++z) parts.word.exponents.push_back(0);
        if (!(reconstruct(parts.word) == g))
          throw std::logic_error("eichler_decompose: prefix assembly failed");
        return parts;
      }
    }
  }
  throw std::logic_error("eichler_decompose: no canonical form found for " + g.str());
}

EichlerWord eichler_decompose(const GammaElement& g) {
  return eichler_decompose_parts(g).word;
}

namespace {

GammaElement coset_rep_for(const Int& c, const Int& d) {
  // a = d^{-1} mod c with |a| minimal (ties resolved to the value in [0, c)),
  // realizing |a| <= |c|; b follows from the determinant.
  Int a0;
  if (c == 1) {
    a0 = 0;
  } else {
    if (mpz_invert(a0.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t()) == 0)
      throw std::logic_error("coset_rep_for: noninvertible d mod c");
  }
  Int alt = a0 - c;
  Int a = (abs(alt) < abs(a0)) ? alt : a0;
  Int b = (a * d - 1) / c;
  return GammaElement(a, b, c, d);
}

}  // namespace

std::vector<GammaElement> coset_reps(long N, bool mod_minus) {
  if (N < 1) throw std::invalid_argument("coset_reps: N must be >= 1");
  std::vector<GammaElement> out;
  out.push_back(GammaElement::identity());
  if (!mod_minus) out.push_back(GammaElement::identity().negated());
  for (long c = 1; c <= N; ++c) {
    for (long d = -N; d <= N; ++d) {
      if (mpz_gcd_ui(nullptr, Int(c).get_mpz_t(), static_cast<unsigned long>(d < 0 ? -d : d)) != 1)
        continue;
      GammaElement rep = coset_rep_for(Int(c), Int(d));
      out.push_back(rep);
      if (!mod_minus) out.push_back(rep.negated());  // bottom row (-c, -d)
    }
  }
  std::sort(out.begin(), out.end(), [](const GammaElement& x, const GammaElement& y) {
    auto key = [](const GammaElement& g) {
      return std::make_tuple(abs(g.c()), abs(g.d()), g.c(), g.d());
    };
    return key(x) < key(y);
  });
  return out;
}

bool same_coset(const GammaElement& g, const GammaElement& h, bool mod_minus) {
  GammaElement x = g * h.inverse();
  if (x.c() != 0) return false;
  if (x.a() == 1) return true;
  return mod_minus;  // x = -T^m
}

}  // namespace logvvmf
