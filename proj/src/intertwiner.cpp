#include "wigrep/intertwiner.hpp"

#include <algorithm>
#include <random>

namespace wigrep {

const char* to_string(IntertwinerMethod method) {
  switch (method) {
    case IntertwinerMethod::Auto: return "auto";
    case IntertwinerMethod::Vectorized: return "vectorized";
    case IntertwinerMethod::CyclicSupport: return "cyclic_support";
  }
  return "unknown";
}

namespace {

constexpr Index kMaxVectorized = Index{1} << 16;

void require_same_algebra(const GnsRepresentation& a, const GnsRepresentation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::AlgebraMismatch, "representations of algebras of different size");
  if (a.algebra && b.algebra && !a.algebra->same_basis(*b.algebra))
    throw Error(ErrorCode::AlgebraMismatch, "representations of different algebras");
}

std::vector<CVector> generator_coords(const GnsRepresentation& rep) {
  if (rep.algebra) return rep.algebra->generators();
  std::vector<CVector> all;
  for (Index i = 0; i < rep.size(); ++i) all.push_back(CVector::Unit(rep.size(), i));
  return all;
}

std::vector<CMatrix> solve_vectorized(const GnsRepresentation& a, const GnsRepresentation& b, const Tolerance& tol) {
  const Index m = a.hilbert_dim;
  const Index mp = b.hilbert_dim;
  if (m * mp > kMaxVectorized) throw Error(ErrorCode::CapExceeded, "vectorized intertwiner system limited to m m' <= 2^16");
  const std::vector<CVector> gens = generator_coords(a);
  const Index block = m * mp;
  CMatrix stacked(block * static_cast<Index>(gens.size()), block);
  const CMatrix eye_m = CMatrix::Identity(m, m);
  const CMatrix eye_mp = CMatrix::Identity(mp, mp);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const CMatrix pa = rep_of(a, gens[g]);
    const CMatrix pb = rep_of(b, gens[g]);
    stacked.middleRows(static_cast<Index>(g) * block, block) = kron(eye_m, pb) - kron(pa.transpose(), eye_mp);
  }
  const CMatrix null = null_space(stacked, tol);
  std::vector<CMatrix> basis;
  for (Index k = 0; k < null.cols(); ++k) basis.emplace_back(Eigen::Map<const CMatrix>(null.col(k).data(), mp, m));
  return basis;
}

std::vector<CMatrix> solve_cyclic(const GnsRepresentation& a, const GnsRepresentation& b, const CMatrix& orbit,
                                  const Tolerance& tol) {
  const MatrixAlgebra& alg = *a.algebra;
  const Index m = a.hilbert_dim;
  const Index mp = b.hilbert_dim;
  if (mp == 0 || m == 0) return {};

  // support projection of the state of Omega
  State omega{CVector(a.size())};
  for (Index i = 0; i < a.size(); ++i) omega.values(i) = a.cyclic_vector.dot(orbit.col(i));
  const CMatrix dens = state_density(alg, omega);
  const HermitianEig eig = hermitian_eig(CMatrix(0.5 * (dens + dens.adjoint())), tol);
  Index r = 0;
  while (r < eig.values.size() && eig.values(r) > tol.rel * eig.values(0)) ++r;
  const CMatrix support = eig.vectors.leftCols(r) * eig.vectors.leftCols(r).adjoint();
  const CMatrix ps = rep_of(b, alg.coords(support));
  const HermitianEig range = hermitian_eig(CMatrix(0.5 * (ps + ps.adjoint())), tol);
  Index k = 0;
  while (k < range.values.size() && range.values(k) > 0.5) ++k;
  if (k == 0) return {};

  const Eigen::HouseholderQR<CMatrix> qr(orbit.transpose());
  CMatrix vecs(mp * m, k);
  for (Index c = 0; c < k; ++c) {
    const CMatrix target = orbit_matrix(b, range.vectors.col(c));
    const CMatrix xt = qr.solve(CMatrix(target.transpose()));
    const CMatrix x = xt.transpose();
    vecs.col(c) = Eigen::Map<const CVector>(x.data(), mp * m);
  }
  const Eigen::HouseholderQR<CMatrix> ortho(vecs);
  const CMatrix q = ortho.householderQ() * CMatrix::Identity(mp * m, k);
  std::vector<CMatrix> basis;
  for (Index c = 0; c < k; ++c) basis.emplace_back(Eigen::Map<const CMatrix>(q.col(c).data(), mp, m));
  return basis;
}

}  // namespace

double intertwining_residual(const CMatrix& x, const GnsRepresentation& a, const GnsRepresentation& b) {
  if (a.size() != b.size() || x.rows() != b.hilbert_dim || x.cols() != a.hilbert_dim)
    throw Error(ErrorCode::DimensionMismatch, "intertwiner shape does not match representations");
  double r = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const CMatrix lhs = multiply(x, a.rep[static_cast<std::size_t>(i)]);
    const CMatrix rhs = multiply(b.rep[static_cast<std::size_t>(i)], x);
    r = std::max(r, max_abs(lhs - rhs));
  }
  return r;
}

IntertwinerReport intertwiner_space(const GnsRepresentation& a, const GnsRepresentation& b,
                                    const IntertwinerOptions& opts) {
  opts.tol.validate();
  require_same_algebra(a, b);
  IntertwinerReport out;
  out.seed = opts.seed;

  IntertwinerMethod method = opts.method;
  CMatrix orbit;
  if (method != IntertwinerMethod::Vectorized && a.algebra && a.hilbert_dim > 0) {
    orbit = orbit_matrix(a, a.cyclic_vector);
    if (method == IntertwinerMethod::Auto)
      method = numerical_rank(orbit, opts.tol) == a.hilbert_dim ? IntertwinerMethod::CyclicSupport
                                                                   : IntertwinerMethod::Vectorized;
    else if (numerical_rank(orbit, opts.tol) != a.hilbert_dim)
      throw Error(ErrorCode::NotGns, "cyclic-support route needs a cyclic source vector");
  } else if (method != IntertwinerMethod::Vectorized) {
    method = IntertwinerMethod::Vectorized;
  }
  out.method = method;
  out.basis = method == IntertwinerMethod::CyclicSupport ? solve_cyclic(a, b, orbit, opts.tol)
                                                        : solve_vectorized(a, b, opts.tol);
  out.space_dim = static_cast<Index>(out.basis.size());
  for (const auto& x : out.basis) out.basis_residual = std::max(out.basis_residual, intertwining_residual(x, a, b));

  if (a.hilbert_dim != b.hilbert_dim || out.space_dim == 0) return out;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int draws = out.space_dim == 1 ? 1 : opts.draws;
  for (int t = 0; t < draws; ++t) {
    ++out.draws_used;
    CMatrix x = CMatrix::Zero(b.hilbert_dim, a.hilbert_dim);
    for (const auto& basis_el : out.basis) {
      const double re = normal(rng);
      const double im = normal(rng);
      x += cplx(re, im) * basis_el;
    }
    CMatrix u;
    try {
      u = polar_unitary(x, opts.tol);
    } catch (const Error&) {
      continue;
    }
    u = fix_phase(u);
    const double unit = unitarity_residual(u);
    const double resid = intertwining_residual(u, a, b);
    if (unit <= kCertificateTol && resid <= kCertificateTol) {
      out.has_unitary = true;
      out.witness = u;
      out.witness_residual = resid;
      out.witness_unitarity = unit;
      break;
    }
  }
  return out;
}

Equivalence is_unitarily_equivalent(const GnsRepresentation& a, const GnsRepresentation& b,
                                    const IntertwinerOptions& opts) {
  Equivalence out;
  out.report = intertwiner_space(a, b, opts);
  out.equivalent = out.report.has_unitary;
  out.witness = out.report.witness;
  out.residual = out.report.witness_residual;
  return out;
}

Equivalence is_implementable(const GnsRepresentation& rep, const Automorphism& alpha, const IntertwinerOptions& opts) {
  return is_unitarily_equivalent(rep, compose_rep(rep, inverse(alpha)), opts);
}

Index commutant_dim(const GnsRepresentation& rep, const IntertwinerOptions& opts) {
  return intertwiner_space(rep, rep, opts).space_dim;
}

}  // namespace wigrep
