#pragma once

// The graded ring M = C[Q, R] of classical holomorphic modular forms,
// modular-derivative iterates, and discovery of the minimal modular linear
// differential equation annihilating the components of a vector-valued form.
// Exact Gaussian-rational and MPFR-complex instantiations.

#include "logvvmf/logq.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace logvvmf {

// Monomials Q^a R^b with 4a + 6b = weight, listed with a descending.
std::vector<std::pair<int, int>> mform_basis(long weight);
long mform_dim(long weight);

template <class F>
struct GradedModularForm {
  long weight = 0;
  std::map<std::pair<int, int>, F> coeffs;  // (a, b) -> coefficient, 4a+6b = weight

  bool is_zero() const {
    for (const auto& [m, c] : coeffs)
      if (!field_traits<F>::is_zero(c)) return false;
    return true;
  }
  void set(int a, int b, const F& c) {
    if (4 * a + 6 * b != weight)
      throw std::invalid_argument("GradedModularForm: monomial weight mismatch");
    if (field_traits<F>::is_zero(c)) coeffs.erase({a, b});
    else coeffs[{a, b}] = c;
  }
  LogQSeries<F> q_expansion(long order, Basis basis = Basis::Binomial) const;
  std::string str() const;
};

template <class F>
struct Mlde {
  int order = 0;        // p
  long lead_weight = 0; // l: g_j lies in M_{l+2j}
  long base_weight = 0; // weight of the annihilated form
  std::vector<GradedModularForm<F>> g;  // g_0 ... g_p
};

// [F, D_k F, D_{k+2} D_k F, ...]; count iterates past the input layer.
template <class F>
std::vector<std::vector<LogQSeries<F>>> d_iterates(const std::vector<LogQSeries<F>>& comps,
                                                   long k, int count);

struct MldeSearchStats {
  std::size_t kernel_dim = 0;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
};

// Order-p MLDE with leading weight exactly L. Throws NoSolution when the
// coefficient system has full rank, AmbiguousKernel when the kernel has
// dimension > 1, TruncationUnderflow when the series are too short to
// overdetermine the system.
template <class F>
Mlde<F> find_mlde(const std::vector<LogQSeries<F>>& comps, long k, int order, long lead_weight,
                  MldeSearchStats* stats = nullptr);

// Least order, then least leading weight, g_0 normalized to leading
// q-coefficient 1. Dependent components are replaced by a basis of their
// span first.
template <class F>
Mlde<F> minimal_mlde(const std::vector<LogQSeries<F>>& comps, long k, long max_lead_weight = 24);

// Residual series of an MLDE applied to components (max |coefficient| over
// all components, zero in exact mode when the MLDE annihilates them).
template <class F>
Real mlde_residual(const Mlde<F>& mlde, const std::vector<LogQSeries<F>>& comps, long k);

// ---- Hilbert-Poincare probes ---------------------------------------------

// Coefficients of sum_j t^{k_j} / ((1-t^4)(1-t^6)) up to k_hi.
std::vector<long> hilbert_coefficients(const std::vector<long>& gen_weights, long k_hi);

struct HilbertReport {
  bool ok = true;
  long first_mismatch = 0;
  std::vector<long> predicted, given;  // indexed by weight k = 0..k_hi
};

// Compares provided dimension samples dims[k] (k = 0..k_hi) against the
// rational-function coefficients for the claimed generator weights.
HilbertReport hilbert_series_check(const std::vector<long>& gen_weights,
                                   const std::vector<long>& dims, long k_hi);

// Numeric dimension probe: rank of the coefficient matrix of
// { Q^a R^b F_j : 4a+6b = k - k_j } at each weight k in [k_lo, k_hi] (same
// parity steps of 2). Generators are given as component vectors.
std::vector<long> free_module_dims(const std::vector<std::vector<CSeries>>& gens,
                                   const std::vector<long>& gen_weights, long k_lo, long k_hi);

}  // namespace logvvmf
