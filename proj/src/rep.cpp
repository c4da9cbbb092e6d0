#include "logvvmf/rep.hpp"

#include "logvvmf/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace logvvmf {

namespace {

Rat rat_frac(const Rat& q) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  Rat f = q - Rat(fl);
  f.canonicalize();
  return f;
}

// binom(l, i) for arbitrary integer l, exact.
Rat rat_binom(const Int& l, int i) {
  Int num = 1, den = 1;
  for (int t = 0; t < i; ++t) {
    num *= (l - t);
    den *= (t + 1);
  }
  Rat q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

int BlockSpec::dim() const {
  int s = 0;
  for (const auto& b : blocks) s += b.size;
  return s;
}

int BlockSpec::max_block() const {
  int s = 0;
  for (const auto& b : blocks) s = std::max(s, b.size);
  return s;
}

int BlockSpec::offset(int r) const {
  int s = 0;
  for (int i = 0; i < r; ++i) s += blocks[i].size;
  return s;
}

int BlockSpec::block_of(int i) const {
  int s = 0;
  for (int r = 0; r < count(); ++r) {
    s += blocks[r].size;
    if (i < s) return r;
  }
  throw std::out_of_range("BlockSpec::block_of");
}

Cplx BlockSpec::lambda(int r) const {
  Real theta = 2 * pi_value() * to_real(blocks[r].mu);
  return cis(theta);
}

Representation::Representation(CMatrix rho_S, BlockSpec spec)
    : p_(spec.dim()), rho_S_(std::move(rho_S)), spec_(std::move(spec)) {
  if (static_cast<int>(rho_S_.rows()) != p_ || static_cast<int>(rho_S_.cols()) != p_)
    throw std::invalid_argument("Representation: rho_S size disagrees with block spec");
  for (const auto& b : spec_.blocks)
    if (b.size < 1 || b.mu < 0 || b.mu >= 1)
      throw std::invalid_argument("Representation: block sizes must be >= 1 and mu in [0,1)");
  rho_T_ = CMatrix(p_, p_);
  int off = 0;
  for (int r = 0; r < spec_.count(); ++r) {
    Cplx lam = spec_.lambda(r);
    int m = spec_.blocks[r].size;
    for (int i = 0; i < m; ++i) {
      rho_T_(off + i, off + i) = lam;
      if (i + 1 < m) rho_T_(off + i + 1, off + i) = lam;
    }
    off += m;
  }
}

Representation Representation::trivial() {
  CMatrix s(1, 1);
  s(0, 0) = Cplx(1);
  return Representation(std::move(s), BlockSpec{{JordanBlock{1, Rat(0)}}});
}

Representation Representation::standard() {
  CMatrix s(2, 2);
  s(0, 1) = Cplx(1);
  s(1, 0) = Cplx(-1);
  return Representation(std::move(s), BlockSpec{{JordanBlock{2, Rat(0)}}});
}

ValidationReport Representation::validate(const Real& tol) const {
  ValidationReport rep;
  CMatrix st = rho_S_ * rho_T_;
  CMatrix lhs = st * st * st;
  CMatrix s2 = rho_S_ * rho_S_;
  rep.braid_residual = max_abs(lhs - s2);
  rep.order_residual = max_abs(s2 * s2 - CMatrix::identity(p_));
  rep.ok = rep.braid_residual <= tol && rep.order_residual <= tol;
  return rep;
}

void Representation::validate_or_throw(const Real& tol) const {
  ValidationReport r = validate(tol);
  if (!r.ok) {
    std::ostringstream os;
    os << "representation violates the defining relations: |(ST)^3 - S^2| = "
       << r.braid_residual.str(6) << ", |S^4 - 1| = " << r.order_residual.str(6);
    throw RelationViolation(os.str());
  }
}

CMatrix Representation::power_T(const Int& l) const {
  CMatrix out(p_, p_);
  int off = 0;
  for (int r = 0; r < spec_.count(); ++r) {
    int m = spec_.blocks[r].size;
    // lambda^l with the phase reduced exactly: e^{2 pi i frac(mu l)}
    Rat phase = rat_frac(spec_.blocks[r].mu * Rat(l));
    Cplx laml = cis(2 * pi_value() * to_real(phase));
    for (int sub = 0; sub < m; ++sub) {
      Cplx coef = laml * Cplx(to_real(rat_binom(l, sub)));
      for (int i = sub; i < m; ++i) out(off + i, off + i - sub) = coef;
    }
    off += m;
  }
  return out;
}

CMatrix Representation::evaluate(const GammaElement& g) const {
  EichlerWord w = eichler_decompose(g);
  CMatrix acc = CMatrix::identity(p_);
  for (std::size_t j = w.exponents.size(); j-- > 0;) acc = acc * rho_S_ * power_T(w.exponents[j]);
  return acc;
}

SplitResult Representation::split_by_S2(const Real& tol) const {
  SplitResult out;
  out.s2 = rho_S_ * rho_S_;
  Real invol = max_abs(out.s2 * out.s2 - CMatrix::identity(p_));
  if (invol > tol)
    throw NonInvolutive("rho(S^2)^2 differs from the identity by " + invol.str(6));

  for (int eps : {1, -1}) {
    CMatrix target = CMatrix::identity(p_).scaled(Cplx(eps));
    if (max_abs(out.s2 - target) <= tol) {
      out.scalar = true;
      out.epsilon = eps;
      break;
    }
  }
  CMatrix id = CMatrix::identity(p_);
  out.proj_plus = (id + out.s2).scaled(Cplx(Real(1) / 2));
  out.proj_minus = (id - out.s2).scaled(Cplx(Real(1) / 2));
  for (const CMatrix* pr : {&out.proj_plus, &out.proj_minus}) {
    Real tr = 0;
    for (int i = 0; i < p_; ++i) tr += (*pr)(i, i).re;
    out.dims.push_back(static_cast<int>(boost::multiprecision::round(tr).convert_to<long>()));
  }
  if (out.scalar) return out;

  // Restrict to each eigenspace and put the restricted rho(T) back into
  // modified Jordan form, so the parts are again representations of our type.
  std::vector<Rat> mus;
  for (const auto& b : spec_.blocks)
    if (std::find(mus.begin(), mus.end(), b.mu) == mus.end()) mus.push_back(b.mu);
  try {
    int which = 0;
    for (const CMatrix* pr : {&out.proj_plus, &out.proj_minus}) {
      int eps = which == 0 ? 1 : -1;
      int d = out.dims[which];
      ++which;
      if (d == 0) continue;
      QRResult qr = qr_factor(*pr, CMatrix(p_, 0), /*pivot=*/true);
      CMatrix embed(p_, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < p_; ++i) embed(i, j) = (*pr)(i, qr.perm[j]);
      auto restrict_to = [&](const CMatrix& g) {
        return least_squares(embed, g * embed).x;
      };
      CMatrix t_res = restrict_to(rho_T_);
      CMatrix s_res = restrict_to(rho_S_);
      JordanizeResult jz = jordanize_T(t_res, mus, tol * 100);
      CMatrix u_inv = inverse(jz.basis);
      out.parts.push_back(SplitResult::SubRep{
          eps, u_inv * s_res * jz.basis, jz.spec, embed * jz.basis});
    }
  } catch (const Error& e) {
    out.parts.clear();
    out.parts_note = std::string("sub-representation extraction refused: ") + e.what();
  }
  return out;
}

bool Representation::nontriviality_holds(int k, const Real& tol) const {
  SplitResult s = split_by_S2(tol);
  if (!s.scalar)
    throw NotScalarS2("nontriviality condition needs rho(S^2) = +-I");
  int want = (k % 2 == 0) ? 1 : -1;
  return s.epsilon == want;
}

namespace {

// columns spanning the column space of m, chosen by pivoted QR
CMatrix independent_columns(const CMatrix& m, std::size_t rank,
                            const std::vector<std::size_t>& perm) {
  CMatrix out(m.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, perm[j]);
  return out;
}

}  // namespace

JordanizeResult jordanize_T(const CMatrix& m, const std::vector<Rat>& declared_mus,
                            const Real& tol) {
  const std::size_t p = m.rows();
  if (m.cols() != p) throw std::invalid_argument("jordanize_T: square matrix required");
  Real scale = max_abs(m);
  if (scale.is_zero()) throw std::invalid_argument("jordanize_T: zero matrix");
  Real rel = tol / scale;

  Real band = sqrt(rel);  // suspicious range between tolerance and an honest scale
  auto guard_rank = [&](const CMatrix& a) {
    RankResult rr = rank_and_kernel(a, rel);
    for (const Real& dv : rr.diag_abs) {
      if (dv > rr.largest * rel && dv < rr.largest * band)
        throw Error("jordanize_T: rank decision ambiguous near tolerance; refusing");
    }
    return rr;
  };

  std::vector<std::vector<Cplx>> basis_cols;   // accumulated chain vectors
  std::vector<JordanBlock> blocks;

  auto span_rank = [&](const std::vector<std::vector<Cplx>>& cols) -> std::size_t {
    if (cols.empty()) return 0;
    CMatrix a(p, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < p; ++i) a(i, j) = cols[j][i];
    return rank_and_kernel(a, rel).rank;
  };

  for (const Rat& mu : declared_mus) {
    Cplx lam = cis(2 * pi_value() * to_real(mu));
    CMatrix a = m - CMatrix::identity(p).scaled(lam);
    // kernel dimensions of a^k until they stabilize
    std::vector<std::vector<std::vector<Cplx>>> kernels;  // kernels[k-1]
    CMatrix ak = a;
    std::size_t prev = 0;
    for (;;) {
      RankResult rr = guard_rank(ak);
      std::size_t kd = p - rr.rank;
      if (kd == prev) break;
      kernels.push_back(rr.kernel);
      prev = kd;
      ak = ak * a;
      if (kernels.size() > p) break;
    }
    if (kernels.empty()) continue;  // declared eigenvalue not present
    int kmax = static_cast<int>(kernels.size());

    Cplx lam_inv = inv(lam);
    for (int k = kmax; k >= 1; --k) {
      const auto& level = kernels[k - 1];
      const auto* below = (k >= 2) ? &kernels[k - 2] : nullptr;
      for (const auto& u : level) {
        // independent of ker(a^{k-1}) + previously chosen chain vectors?
        std::vector<std::vector<Cplx>> test = basis_cols;
        if (below) test.insert(test.end(), below->begin(), below->end());
        std::size_t base_rank = span_rank(test);
        test.push_back(u);
        if (span_rank(test) == base_rank) continue;
        // chain v, lam^{-1} A v, lam^{-2} A^2 v, ... gives a modified block
        std::vector<Cplx> v = u;
        for (int step = 0; step < k; ++step) {
          basis_cols.push_back(v);
          if (step + 1 < k) {
            std::vector<Cplx> next(p, Cplx(0));
            for (std::size_t i = 0; i < p; ++i)
              for (std::size_t j2 = 0; j2 < p; ++j2) next[i] += a(i, j2) * v[j2];
            for (auto& x : next) x *= lam_inv;
            v = std::move(next);
          }
        }
        blocks.push_back(JordanBlock{k, mu});
      }
    }
  }

  if (basis_cols.size() != p)
    throw Error("jordanize_T: declared eigenvalues do not account for the full space");

  JordanizeResult out;
  out.spec.blocks = blocks;
  out.basis = CMatrix(p, p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < p; ++i) out.basis(i, j) = basis_cols[j][i];

  // verify M C = C J
  Representation probe(CMatrix::identity(p), out.spec);  // for rho_T only
  Real resid = max_abs(m * out.basis - out.basis * probe.rho_T());
  Real bscale = max_abs(out.basis);
  if (resid > tol * 100 * (1 + scale) * (1 + bscale))
    throw Error("jordanize_T: residual check failed: " + resid.str(6));
  return out;
}

}  // namespace logvvmf
