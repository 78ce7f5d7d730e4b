#include "wigrep/gns.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace wigrep {

namespace {

constexpr Index kMaxGnsAlgebra = 4096;

// (I_r (x) A) applied to every column of u, where each column is vec of a d x r matrix.
CMatrix left_multiply_columns(const SparseCMatrix& a, const CMatrix& u, Index d, Index r) {
  const Index m = u.cols();
  const Eigen::Map<const CMatrix> blocks(u.data(), d, r * m);
  const CMatrix moved = a * blocks;
  return Eigen::Map<const CMatrix>(moved.data(), d * r, m);
}

}  // namespace

GnsRepresentation gns_construct(AlgebraPtr alg, const State& omega, const Tolerance& tol) {
  tol.validate();
  if (!alg) throw std::invalid_argument("gns_construct: null algebra");
  const Index n = alg->size();
  const Index d = alg->ambient_dim();
  if (n > kMaxGnsAlgebra) throw Error(ErrorCode::CapExceeded, "GNS construction limited to N <= 4096");
  const ValidationReport state_report = check_state(*alg, omega, tol);
  if (!state_report.passed()) {
    std::string what = "state fails validation:";
    for (const auto& c : state_report.checks())
      if (!c.passed) what += " " + c.name + "=" + std::to_string(c.residual);
    throw Error(ErrorCode::InvalidState, what);
  }

  const CMatrix dens = state_density(*alg, omega);
  const HermitianEig eig = hermitian_eig(CMatrix(0.5 * (dens + dens.adjoint())), tol);
  const double pmax = eig.values(0);
  Index r = 0;
  while (r < eig.values.size() && eig.values(r) > tol.rel * pmax) ++r;
  CMatrix phi(d, r);
  for (Index s = 0; s < r; ++s) phi.col(s) = std::sqrt(eig.values(s)) * eig.vectors.col(s);

  GnsRepresentation out;
  out.algebra = alg;
  out.rep.reserve(static_cast<std::size_t>(n));
  const Eigen::Map<const CVector> vec_phi(phi.data(), d * r);

  if (alg->is_full()) {
    const Index m = d * r;
    out.hilbert_dim = m;
    for (Index i = 0; i < n; ++i) {
      const CMatrix e = alg->element_dense(i);
      out.rep.push_back(r == 1 ? e : kron(CMatrix::Identity(r, r), e));
    }
    out.cyclic_vector = vec_phi;
    out.quotient.resize(m, n);
    for (Index j = 0; j < n; ++j) {
      const CMatrix ep = alg->element(j) * phi;
      out.quotient.col(j) = Eigen::Map<const CVector>(ep.data(), m);
    }
  } else {
    CMatrix span(d * r, n);
    for (Index j = 0; j < n; ++j) {
      const CMatrix ep = alg->element(j) * phi;
      span.col(j) = Eigen::Map<const CVector>(ep.data(), d * r);
    }
    const HermitianEig gram = hermitian_eig(CMatrix(span * span.adjoint()), tol);
    Index m = 0;
    while (m < gram.values.size() && gram.values(m) > tol.rel * gram.values(0)) ++m;
    const CMatrix u = gram.vectors.leftCols(m);
    out.hilbert_dim = m;
    for (Index i = 0; i < n; ++i) out.rep.push_back(u.adjoint() * left_multiply_columns(alg->element(i), u, d, r));
    out.cyclic_vector = u.adjoint() * vec_phi;
    out.quotient = u.adjoint() * span;
  }

  const double norm = out.cyclic_vector.norm();
  if (norm > 0.0) {
    out.cyclic_vector /= norm;
    out.quotient /= norm;
  }
  return out;
}

CMatrix orbit_matrix(const GnsRepresentation& rep, const CVector& x) {
  CMatrix s(x.size(), rep.size());
  for (Index j = 0; j < rep.size(); ++j) s.col(j) = rep.rep[static_cast<std::size_t>(j)] * x;
  return s;
}

CMatrix rep_of(const GnsRepresentation& rep, const CVector& coeffs) {
  if (coeffs.size() != rep.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate length != N");
  CMatrix out = CMatrix::Zero(rep.hilbert_dim, rep.hilbert_dim);
  for (Index k = 0; k < coeffs.size(); ++k)
    if (coeffs(k) != cplx(0.0, 0.0)) out += coeffs(k) * rep.rep[static_cast<std::size_t>(k)];
  return out;
}

ValidationReport verify_gns(const MatrixAlgebra& alg, const State& omega, const GnsRepresentation& rep,
                            const Tolerance& tol) {
  ValidationReport report;
  const Index n = alg.size();
  const Index m = rep.hilbert_dim;
  bool dims_ok = rep.size() == n && omega.values.size() == n && rep.cyclic_vector.size() == m;
  for (const auto& p : rep.rep) dims_ok = dims_ok && p.rows() == m && p.cols() == m;
  if (!dims_ok) {
    report.add_verdict("dimensions", 1.0, 0.0, false);
    return report;
  }
  const CVector& omega_vec = rep.cyclic_vector;

  report.add("cyclic_norm", std::abs(omega_vec.norm() - 1.0), tol.abs);

  double expect = 0.0;
  for (Index i = 0; i < n; ++i) {
    const cplx v = omega_vec.dot(rep.rep[static_cast<std::size_t>(i)] * omega_vec);
    expect = std::max(expect, std::abs(v - omega.values(i)));
  }
  report.add("state_reproduction", expect, kCertificateTol);

  const Index rank = m == 0 ? 0 : numerical_rank(orbit_matrix(rep, omega_vec), tol);
  report.add_verdict("cyclicity", static_cast<double>(m - rank), 0.0, rank == m);

  report.add("unit", max_abs(rep.rep[0] - CMatrix::Identity(m, m)), tol.abs);

  // Full-algebra representations (I_r (x) E) are almost all exact zeros; checking
  // them as sparse matrices keeps large chains from streaming N dense m x m blocks.
  Index nnz = 0;
  for (const auto& p : rep.rep) nnz += (p.array() != cplx(0.0, 0.0)).count();
  const bool sparse_rep = nnz * 8 < n * m * m;
  std::vector<SparseCMatrix> srep;
  if (sparse_rep)
    for (const auto& p : rep.rep) srep.push_back(p.sparseView(1.0, 0.0));

  double hom = 0.0;
  CMatrix diff(m, m);
  for (const auto& g : alg.generators()) {
    const CMatrix pg = rep_of(rep, g);
    const SparseCMatrix pg_sparse = pg.sparseView(1.0, 0.0);
    const SparseCMatrix gs = alg.realize(g).sparseView(1.0, 0.0);
    for (Index j = 0; j < n; ++j) {
      const SparseCVector c = alg.coords(SparseCMatrix(gs * alg.element(j)));
      if (sparse_rep) {
        SparseCMatrix sdiff = pg_sparse * srep[static_cast<std::size_t>(j)];
        for (SparseCVector::InnerIterator it(c); it; ++it) sdiff -= it.value() * srep[static_cast<std::size_t>(it.index())];
        for (Index k = 0; k < sdiff.outerSize(); ++k)
          for (SparseCMatrix::InnerIterator it(sdiff, k); it; ++it) hom = std::max(hom, std::abs(it.value()));
        continue;
      }
      const CMatrix& pj = rep.rep[static_cast<std::size_t>(j)];
      if (pg_sparse.nonZeros() * 8 < pg.size())
        diff.noalias() = pg_sparse * pj;
      else
        diff.noalias() = pg * pj;
      for (SparseCVector::InnerIterator it(c); it; ++it) diff -= it.value() * rep.rep[static_cast<std::size_t>(it.index())];
      hom = std::max(hom, max_abs(diff));
    }
  }
  report.add("multiplicative", hom, kCertificateTol);

  double star = 0.0;
  for (Index i = 0; i < n; ++i) {
    const SparseCVector c = alg.adjoint_map().col(i);
    if (sparse_rep) {
      SparseCMatrix sdiff = -SparseCMatrix(srep[static_cast<std::size_t>(i)].adjoint());
      for (SparseCVector::InnerIterator it(c); it; ++it) sdiff += it.value() * srep[static_cast<std::size_t>(it.index())];
      for (Index k = 0; k < sdiff.outerSize(); ++k)
        for (SparseCMatrix::InnerIterator it(sdiff, k); it; ++it) star = std::max(star, std::abs(it.value()));
      continue;
    }
    diff = -rep.rep[static_cast<std::size_t>(i)].adjoint();
    for (SparseCVector::InnerIterator it(c); it; ++it) diff += it.value() * rep.rep[static_cast<std::size_t>(it.index())];
    star = std::max(star, max_abs(diff));
  }
  report.add("star_preserving", star, kCertificateTol);
  return report;
}

State vector_to_state(const GnsRepresentation& rep, const CVector& x, const Tolerance& tol) {
  if (x.size() != rep.hilbert_dim) throw Error(ErrorCode::DimensionMismatch, "vector length != hilbert_dim");
  const double norm = x.norm();
  if (!(std::abs(norm - 1.0) <= tol.abs)) throw Error(ErrorCode::NotUnit, "||x|| = " + std::to_string(norm));
  State s{CVector(rep.size())};
  for (Index i = 0; i < rep.size(); ++i) s.values(i) = x.dot(rep.rep[static_cast<std::size_t>(i)] * x);
  return s;
}

GnsRepresentation compose_rep(const GnsRepresentation& rep, const Automorphism& alpha) {
  const Index n = rep.size();
  if (alpha.dim() != n) throw Error(ErrorCode::DimensionMismatch, "automorphism dimension != N");
  const SparseCMatrix& inv = alpha.inverse_matrix();
  GnsRepresentation out;
  out.algebra = rep.algebra;
  out.hilbert_dim = rep.hilbert_dim;
  out.cyclic_vector = rep.cyclic_vector;
  out.rep.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    CMatrix p = CMatrix::Zero(rep.hilbert_dim, rep.hilbert_dim);
    for (SparseCMatrix::InnerIterator it(inv, i); it; ++it) p += it.value() * rep.rep[static_cast<std::size_t>(it.row())];
    out.rep.push_back(std::move(p));
  }
  out.quotient = rep.quotient * inv;
  return out;
}

GnsRepresentation direct_sum(const GnsRepresentation& a, const GnsRepresentation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "direct_sum of reps of different algebras");
  const Index ma = a.hilbert_dim;
  const Index mb = b.hilbert_dim;
  GnsRepresentation out;
  out.algebra = a.algebra;
  out.hilbert_dim = ma + mb;
  for (Index i = 0; i < a.size(); ++i) {
    CMatrix p = CMatrix::Zero(ma + mb, ma + mb);
    p.topLeftCorner(ma, ma) = a.rep[static_cast<std::size_t>(i)];
    p.bottomRightCorner(mb, mb) = b.rep[static_cast<std::size_t>(i)];
    out.rep.push_back(std::move(p));
  }
  out.cyclic_vector = CVector::Zero(ma + mb);
  out.cyclic_vector.head(ma) = a.cyclic_vector;
  out.quotient = orbit_matrix(out, out.cyclic_vector);
  return out;
}

}  // namespace wigrep
