#pragma once

// Exact integer arithmetic in SL2(Z): composition, Mobius action, cocycle,
// the Eichler canonical word of a group element, and coset enumeration for
// <T>\Gamma and +-<T>\Gamma.

#include "logvvmf/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logvvmf {

class GammaElement {
 public:
  GammaElement() : a_(1), b_(0), c_(0), d_(1) {}
  GammaElement(Int a, Int b, Int c, Int d);  // throws std::invalid_argument unless ad-bc=1

  static GammaElement S() { return GammaElement(0, -1, 1, 0); }
  static GammaElement T() { return GammaElement(1, 1, 0, 1); }
  static GammaElement T_pow(const Int& m) { return GammaElement(1, m, 0, 1); }
  static GammaElement identity() { return GammaElement(); }

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }

  GammaElement operator*(const GammaElement& o) const;
  GammaElement inverse() const { return GammaElement(d_, -b_, -c_, a_); }
  GammaElement negated() const { return GammaElement(-a_, -b_, -c_, -d_); }

  bool operator==(const GammaElement& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }
  bool operator!=(const GammaElement& o) const { return !(*this == o); }

  // (a tau + b)/(c tau + d); requires Im(tau) > 0.
  Cplx mobius(const Cplx& tau) const;
  // j(gamma, tau) = c tau + d
  Cplx cocycle(const Cplx& tau) const;

  std::string str() const;

 private:
  Int a_, b_, c_, d_;
};

// Exponent list (l_0, ..., l_v) of the canonical word (ST^{l_v})...(ST^{l_0}).
struct EichlerWord {
  std::vector<Int> exponents;

  int depth() const { return static_cast<int>(exponents.size()) - 1; }
  // Sign alternation of the strict canonical form: l_1 > 0 and
  // (-1)^{j-1} l_j > 0 for 1 <= j <= v. Elements outside the strict form
  // (see eichler_decompose) get words with a documented zero-exponent tail.
  bool strict() const;
};

GammaElement reconstruct(const EichlerWord& w);

// L = 2v+2 when l_0 != 0, else 2v+1 (applied to the stored exponent list).
Int eichler_length(const EichlerWord& w);

// Breakdown of an extended decomposition gamma = S^{2s} T^m * core.
struct EichlerParts {
  EichlerWord word;       // total word, reconstructs gamma exactly
  EichlerWord core;       // strict part (empty exponents when gamma = +-T^m)
  GammaElement core_elem; // reconstruct(core) when core nonempty
  Int t_prefix = 0;       // m
  int s_power = 0;        // 0 or 2 (power of S in front, times T^m)
  bool is_strict = false; // word == core, no prefix
};

// Total decomposition. Strictly representable elements get the unique
// sign-alternating word of the canonical form. The remaining elements
// (+-T^m and the mirror class) are written as S^{2s} T^m times a strict
// word by appending zero exponents at the top, using S^2 = -I and S^4 = I;
// reconstruction is exact in all cases.
EichlerParts eichler_decompose_parts(const GammaElement& g);
EichlerWord eichler_decompose(const GammaElement& g);

// Strict decomposition only; nullopt when g has no sign-alternating word.
std::optional<EichlerWord> eichler_try_strict(const GammaElement& g);

// One representative per coset of <T>\Gamma (or +-<T>\Gamma when mod_minus)
// with bottom row (c, d), gcd(c,d) = 1, 0 < |c| <= N, |d| <= N, and the top
// row normalized so |a| <= |c|; plus the identity (and -I when !mod_minus)
// for c = 0. Deterministically ordered by (|c|, |d|, c, d).
std::vector<GammaElement> coset_reps(long N, bool mod_minus);

// g h^{-1} in <T> (or +-<T> when mod_minus)?
bool same_coset(const GammaElement& g, const GammaElement& h, bool mod_minus);

}  // namespace logvvmf
