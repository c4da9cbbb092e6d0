#pragma once

// Finite-dimensional representations of the modular group, given by rho(S)
// as an explicit matrix and rho(T) through a block spec in modified Jordan
// form (lambda on the diagonal and the first subdiagonal). Evaluation on
// arbitrary group elements runs along the Eichler word.

#include "logvvmf/linalg.hpp"
#include "logvvmf/numeric.hpp"
#include "logvvmf/sl2z.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logvvmf {

struct JordanBlock {
  int size = 1;
  Rat mu;  // eigenvalue lambda = e^{2 pi i mu}, mu in [0,1)
};

struct BlockSpec {
  std::vector<JordanBlock> blocks;

  int dim() const;
  int count() const { return static_cast<int>(blocks.size()); }
  int max_block() const;
  // M_r = m_1 + ... + m_r; offset(r) = M_r for r = 0..t (so offset(0) = 0).
  int offset(int r) const;
  // block index (0-based) containing 0-based coordinate i
  int block_of(int i) const;
  Cplx lambda(int r) const;  // e^{2 pi i mu_r}
};

struct ValidationReport {
  Real braid_residual;   // |(rho(S)rho(T))^3 - rho(S)^2|
  Real order_residual;   // |rho(S)^4 - I|
  bool ok = false;
};

struct SplitResult {
  bool scalar = false;   // rho(S^2) = eps I
  int epsilon = 0;       // +-1 when scalar
  CMatrix s2;            // rho(S)^2
  CMatrix proj_plus, proj_minus;   // eigenprojectors (I +- rho(S^2))/2
  std::vector<int> dims;           // dimensions of the +-1 eigenspaces

  // Restricted sub-representations on the two eigenspaces (when not scalar):
  // columns of embed span the eigenspace, rho_S/spec describe the restriction
  // in a basis where rho(T) is again in modified Jordan form.
  struct SubRep {
    int epsilon;
    CMatrix rho_S;
    BlockSpec spec;
    CMatrix embed;
  };
  std::vector<SubRep> parts;
  std::string parts_note;  // why parts is empty, when it is
};

class Representation {
 public:
  Representation(CMatrix rho_S, BlockSpec spec);

  int dim() const { return p_; }
  const CMatrix& rho_S() const { return rho_S_; }
  const CMatrix& rho_T() const { return rho_T_; }
  const BlockSpec& spec() const { return spec_; }

  static Representation trivial();
  // The defining 2-dimensional representation, conjugated so that rho(T)
  // is the modified Jordan block J_{2,1}: rho(S) = (0,1;-1,0).
  static Representation standard();

  ValidationReport validate(const Real& tol) const;           // no throw
  void validate_or_throw(const Real& tol) const;               // RelationViolation

  // rho(T)^l per block: lambda^l sum_i binom(l,i) N^i, exact binomials.
  CMatrix power_T(const Int& l) const;

  // rho(g) as the product rho(S) rho(T)^{l_v} ... rho(S) rho(T)^{l_0}.
  CMatrix evaluate(const GammaElement& g) const;

  // rho(S^2) analysis; throws NonInvolutive when rho(S^2)^2 != I within tol.
  SplitResult split_by_S2(const Real& tol) const;

  // epsilon == (-1)^k, for scalar rho(S^2).
  bool nontriviality_holds(int k, const Real& tol) const;

 private:
  int p_;
  CMatrix rho_S_;
  CMatrix rho_T_;
  BlockSpec spec_;
};

// max |entry|
inline Real matrix_norm(const CMatrix& m) { return max_abs(m); }

// Builds a BlockSpec and basis change for a numeric rho(T) whose eigenvalues
// e^{2 pi i mu} are declared exactly by the caller. Returns the change of
// basis C with C^{-1} M C in modified Jordan form. Refuses nearly-defective
// input (ambiguous rank decisions near tol).
struct JordanizeResult {
  BlockSpec spec;
  CMatrix basis;  // columns are the new basis vectors
};
JordanizeResult jordanize_T(const CMatrix& m, const std::vector<Rat>& declared_mus,
                            const Real& tol);

}  // namespace logvvmf
