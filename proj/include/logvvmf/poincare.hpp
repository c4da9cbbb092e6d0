#pragma once

// Truncated evaluation of the matrix-valued Poincare series
//   P(tau) = sum_M rho(M)^{-1} Lambda(..., e^{2 pi i (nu_r+mu_r) M tau}, ...)
//            B(M tau)^{-1} J(M, tau)^{-1}
// over coset representatives with max(|c|,|d|) <= N, plus modularity checks,
// leading-term structure, and numeric q-expansion extraction.

#include "logvvmf/logq.hpp"
#include "logvvmf/rep.hpp"

#include <memory>
#include <string>
#include <vector>

namespace logvvmf {

struct PoincareParams {
  std::vector<long> nu;   // shifts, one per block
  std::vector<int> k;     // weights, one per coordinate
  long N_trunc = 100;     // coset cutoff: max(|c|,|d|) <= N
  unsigned precision = 0; // working digits; 0 keeps the ambient setting

  void check_against(const Representation& rho) const;
};

struct MatrixSample {
  Cplx tau;
  CMatrix value;
  Real tail_bound;  // heuristic bound on the omitted coset tail
};

enum class FoldMode { Auto, Folded, Unfolded };

// Precomputes the coset list and rho(M)^{-1} once; evaluation at a point is
// then a deterministic compensated sum (fixed block structure, so results
// are bit-identical for any thread count).
class PoincareEvaluator {
 public:
  PoincareEvaluator(const Representation& rho, PoincareParams params,
                    FoldMode mode = FoldMode::Auto, int threads = 1);
  ~PoincareEvaluator();
  PoincareEvaluator(PoincareEvaluator&&) noexcept;

  MatrixSample eval(const Cplx& tau) const;

  bool folded() const;
  const std::vector<bool>& column_active() const;  // nontriviality per column
  const std::string& weight_warning() const;       // empty when min k clears the heuristic bar
  std::size_t coset_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MatrixSample poincare_eval(const Representation& rho, const PoincareParams& params,
                           const Cplx& tau, FoldMode mode = FoldMode::Auto, int threads = 1);

// |rho(g) P(tau) - P(g tau) J(g,tau)^{-1}| at equal truncation.
Real modularity_residual(const Representation& rho, const PoincareParams& params,
                         const GammaElement& g, const Cplx& tau,
                         FoldMode mode = FoldMode::Auto, int threads = 1);

// diag(z_1 I_{m_1}, ..., z_t I_{m_t})
CMatrix lambda_rho(const Representation& rho, const std::vector<Cplx>& z);
// diag(B_{m_1}(x), ..., B_{m_t}(x)) and its inverse
CMatrix b_rho(const Representation& rho, const Cplx& x);
CMatrix b_rho_inverse(const Representation& rho, const Cplx& x);
// diag(j(g,tau)^{k_1}, ..., j(g,tau)^{k_p})
CMatrix automorphy_J(const std::vector<int>& k, const GammaElement& g, const Cplx& tau);

// Predicted leading term of P_mn (1-based indices):
// d_mn binom(tau, m-n) q^{nu_r + mu_r} with d_mn = 1 iff M_{r-1} < n <= m.
struct LeadingTerm {
  bool present;
  long n_exp;       // nu_r
  Rat mu;           // mu_r
  int tau_degree;   // m - n
};
LeadingTerm leading_term(const Representation& rho, const PoincareParams& params, int m, int n);

struct ExtractionOptions {
  long Nq = 8;
  long guard = 4;               // extra fitted exponents beyond Nq, not reported;
                                // they absorb the unmodeled q-tail
  std::vector<Real> heights;    // defaults to {1.0, 1.2, 1.5}
  long x_samples = 0;           // per height; 0 means 4*(Nq + guard)
  int threads = 1;
  Real cond_limit;              // 0 picks 10^(digits/2)
  ExtractionOptions() : cond_limit(0) {}
};

struct Extraction {
  std::vector<std::vector<CSeries>> entries;  // p x p
  Real cond;           // worst design-matrix condition estimate
  Real fit_residual;   // worst per-sample rms residual
};

// Least-squares fit of sampled P(x+iy) against the model
// sum_j binom(tau,j) sum_l c_{jl} q^{l+mu_r}; coefficients below the noise
// floor are zeroed. Throws IllConditionedFit past the condition limit.
Extraction extract_coefficients(const Representation& rho, const PoincareParams& params,
                                const ExtractionOptions& opts = {});

struct HolomorphicForm {
  std::vector<CSeries> components;          // p-vector, Delta^v sum_r P(:,M_r)
  std::vector<InfinityClass> classes;       // per component
  std::size_t rank;                         // numeric rank of the coefficient matrix
  bool full_rank;                           // rank == p (reported, not fatal)
  Extraction extraction;
};

// Columns M_r summed and multiplied by Delta^v; needs nu_r + mu_r negative
// and pairwise distinct, and v >= max(-(nu_r+mu_r)).
HolomorphicForm build_holomorphic_form(const Representation& rho, const PoincareParams& params,
                                       long v, const ExtractionOptions& opts = {});

}  // namespace logvvmf
