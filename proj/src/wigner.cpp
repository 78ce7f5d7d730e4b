#include "wigrep/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace wigrep {

double WignerUnitary::residual(const char* name) const {
  const Check* c = certificates.find(name);
  return c ? c->residual : std::numeric_limits<double>::quiet_NaN();
}

namespace {

State state_of(const GnsRepresentation& rep) {
  State s{CVector(rep.size())};
  for (Index i = 0; i < rep.size(); ++i)
    s.values(i) = rep.cyclic_vector.dot(rep.rep[static_cast<std::size_t>(i)] * rep.cyclic_vector);
  return s;
}

void require_gns(const MatrixAlgebra& alg, const State& omega, const GnsRepresentation& rep, const Tolerance& tol,
                 const char* which) {
  const ValidationReport r = verify_gns(alg, omega, rep, tol);
  if (r.passed()) return;
  std::string what = std::string(which) + " is not a GNS representation of its state:";
  for (const auto& c : r.checks())
    if (!c.passed) what += " " + c.name + "=" + std::to_string(c.residual);
  throw Error(ErrorCode::NotGns, what);
}

bool dims_consistent(const MatrixAlgebra& alg, const GnsRepresentation& rep) {
  if (rep.size() != alg.size() || rep.cyclic_vector.size() != rep.hilbert_dim) return false;
  for (const auto& p : rep.rep)
    if (p.rows() != rep.hilbert_dim || p.cols() != rep.hilbert_dim) return false;
  return true;
}

CMatrix range_basis(const CMatrix& m, const Tolerance& tol) {
  if (m.cols() == 0 || max_abs(m) == 0.0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > tol.rel * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

WignerUnitary wigner_unitary(const MatrixAlgebra& alg, const State& omega, const Automorphism& alpha,
                             const GnsRepresentation& src, const GnsRepresentation& tgt, const Tolerance& tol,
                             const std::vector<Index>& order) {
  tol.validate();
  const Index n = alg.size();
  if (alpha.dim() != n || omega.values.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "state or automorphism does not match the algebra");
  require_gns(alg, omega, src, tol, "source representation");
  if (!dims_consistent(alg, tgt)) throw Error(ErrorCode::NotGns, "target representation has inconsistent dimensions");
  const State pushed = pushforward_state(omega, alpha);
  const double mismatch = max_abs(CMatrix(state_of(tgt).values - pushed.values));
  if (!(mismatch <= kCertificateTol))
    throw Error(ErrorCode::InconsistentState,
                "target cyclic vector does not reproduce omega o alpha^{-1} (deviation " + std::to_string(mismatch) + ")");
  require_gns(alg, pushed, tgt, tol, "target representation");

  const CMatrix s_full = orbit_matrix(src, src.cyclic_vector);
  const CMatrix t_full = orbit_matrix(tgt, tgt.cyclic_vector) * alpha.matrix();
  CMatrix s = s_full;
  CMatrix t = t_full;
  if (!order.empty()) {
    s.resize(s_full.rows(), static_cast<Index>(order.size()));
    t.resize(t_full.rows(), static_cast<Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Index j = order[k];
      if (j < 0 || j >= n) throw std::out_of_range("spanning order index out of range");
      s.col(static_cast<Index>(k)) = s_full.col(j);
      t.col(static_cast<Index>(k)) = t_full.col(j);
    }
  }
  const Eigen::HouseholderQR<CMatrix> qr(s.transpose());
  WignerUnitary out;
  out.matrix = CMatrix(qr.solve(CMatrix(t.transpose())).transpose());
  const CMatrix& w = out.matrix;

  double unit = std::numeric_limits<double>::infinity();
  if (w.rows() == w.cols())
    unit = std::max(unitarity_residual(w), max_abs(w * w.adjoint() - CMatrix::Identity(w.rows(), w.rows())));
  out.certificates.add("unitarity", unit, kCertificateTol);
  out.certificates.add("cyclic_vector", max_abs(CMatrix(w * src.cyclic_vector - tgt.cyclic_vector)), kCertificateTol);
  out.certificates.add("intertwining", intertwining_residual(w, compose_rep(src, alpha), tgt), kCertificateTol);
  out.certificates.add("assembly", max_abs(w * s - t), kCertificateTol);
  return out;
}

ValidationReport verify_state_action(const CMatrix& w, const GnsRepresentation& src, const GnsRepresentation& tgt,
                                     const Automorphism& alpha, const std::vector<CVector>& samples) {
  const GnsRepresentation moved = compose_rep(src, alpha);
  double dev = 0.0;
  for (const auto& x : samples) {
    const CVector y = w * x;
    for (Index i = 0; i < src.size(); ++i) {
      const cplx lhs = y.dot(tgt.rep[static_cast<std::size_t>(i)] * y);
      const cplx rhs = x.dot(moved.rep[static_cast<std::size_t>(i)] * x);
      dev = std::max(dev, std::abs(lhs - rhs));
    }
  }
  ValidationReport report;
  report.add("state_action", dev, kCertificateTol);
  return report;
}

ValidationReport verify_transition_probabilities(const CMatrix& w,
                                                 const std::vector<std::pair<CVector, CVector>>& pairs) {
  double dev = 0.0;
  for (const auto& [x, y] : pairs) {
    const double before = std::abs(x.dot(y));
    const double after = std::abs((w * x).dot(w * y));
    dev = std::max(dev, std::abs(before - after));
  }
  ValidationReport report;
  report.add("transition_probability", dev, kCertificateTol);
  return report;
}

SecondCorollary check_second_corollary(const CMatrix& w, const GnsRepresentation& src, const GnsRepresentation& tgt,
                                       const Automorphism& alpha, const std::vector<CVector>& samples) {
  SecondCorollary out;
  out.intertwining_residual = intertwining_residual(w, src, tgt);
  out.intertwines = out.intertwining_residual <= kCertificateTol;
  if (!out.intertwines) return out;

  const GnsRepresentation moved = compose_rep(src, alpha);
  double fixed = 0.0;
  for (Index i = 0; i < src.size(); ++i)
    fixed = std::max(fixed, max_abs(src.rep[static_cast<std::size_t>(i)] - moved.rep[static_cast<std::size_t>(i)]));
  out.checks.add("rep_fixed_by_symmetry", fixed, kCertificateTol);

  double invariant = 0.0;
  for (const auto& x : samples)
    for (Index i = 0; i < src.size(); ++i) {
      const cplx before = x.dot(src.rep[static_cast<std::size_t>(i)] * x);
      const cplx after = x.dot(moved.rep[static_cast<std::size_t>(i)] * x);
      invariant = std::max(invariant, std::abs(before - after));
    }
  out.checks.add("vector_states_invariant", invariant, kCertificateTol);
  return out;
}

double set_level_residual(const CMatrix& w, const GnsRepresentation& src, const GnsRepresentation& tgt,
                          const Tolerance& tol) {
  const Index n = src.size();
  const Index mp = tgt.hilbert_dim;
  if (mp * mp * n > (Index{1} << 22)) throw Error(ErrorCode::CapExceeded, "set-level check limited to m'^2 N <= 2^22");
  CMatrix p(mp * mp, n);
  CMatrix q(mp * mp, n);
  for (Index i = 0; i < n; ++i) {
    const CMatrix& pt = tgt.rep[static_cast<std::size_t>(i)];
    const CMatrix moved = w * src.rep[static_cast<std::size_t>(i)] * w.adjoint();
    p.col(i) = Eigen::Map<const CVector>(pt.data(), mp * mp);
    q.col(i) = Eigen::Map<const CVector>(moved.data(), mp * mp);
  }
  const CMatrix up = range_basis(p, tol);
  const CMatrix uq = range_basis(q, tol);
  const double into_p = max_abs(q - up * (up.adjoint() * q));
  const double into_q = max_abs(p - uq * (uq.adjoint() * p));
  return std::max(into_p, into_q);
}

std::vector<CVector> sample_unit_vectors(Index dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) out.push_back(random_unit_vector(dim, rng));
  return out;
}

Contrast contrast_W_and_V(const GnsRepresentation& rep, const Automorphism& alpha, int samples,
                          const IntertwinerOptions& opts) {
  if (!rep.algebra) throw std::invalid_argument("contrast_W_and_V: representation without algebra");
  const Equivalence eq = is_implementable(rep, alpha, opts);
  if (!eq.equivalent) throw Error(ErrorCode::NotImplementable, "no unitary V with V pi(A) V^H = pi(alpha(A))");

  const MatrixAlgebra& alg = *rep.algebra;
  const State omega = state_of(rep);
  const GnsRepresentation moved = compose_rep(rep, alpha);
  const WignerUnitary w = wigner_unitary(alg, omega, alpha, rep, moved, opts.tol);

  Contrast out;
  out.w = w.matrix;
  out.v = *eq.witness;
  const std::vector<CVector> xs = sample_unit_vectors(rep.hilbert_dim, samples, opts.seed);

  out.certificates.merge(w.certificates, "W.");
  out.certificates.add("W.identity", max_abs(out.w - CMatrix::Identity(out.w.rows(), out.w.cols())), kCertificateTol);
  // W square: the correspondence changes to (pi')^*, pi' = pi o alpha^{-1}.
  out.certificates.merge(verify_state_action(out.w, rep, moved, alpha, xs), "W.");
  // V square: the correspondence pi^* is held fixed.
  out.certificates.add("V.unitarity", unitarity_residual(out.v), kCertificateTol);
  out.certificates.add("V.implements", eq.residual, kCertificateTol);
  out.certificates.merge(verify_state_action(out.v, rep, rep, alpha, xs), "V.");
  return out;
}

}  // namespace wigrep
