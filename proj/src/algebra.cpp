#include "wigrep/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wigrep {

namespace {

using Triplet = Eigen::Triplet<cplx>;

double sparse_max_abs(const SparseCMatrix& m) {
  double r = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

SparseCVector prune_exact(const CVector& v) {
  SparseCVector s(v.size());
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != cplx(0.0, 0.0)) s.insert(i) = v(i);
  return s;
}

double hs_inner_norm(const CMatrix& m, Index d) {
  return std::sqrt(std::max(0.0, m.squaredNorm() / static_cast<double>(d)));
}

// Unit root exp(2 pi i k / d), exact at quarter turns.
cplx unit_root(Index k, Index d) {
  k %= d;
  if ((4 * k) % d == 0) {
    switch ((4 * k) / d) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
}

}  // namespace

// ----------------------------------------------------------------- algebra

AlgebraPtr MatrixAlgebra::from_basis(Index ambient_dim, const std::vector<CMatrix>& basis,
                                     std::vector<CVector> generators, const Tolerance& tol) {
  tol.validate();
  if (ambient_dim < 1) throw Error(ErrorCode::InvalidAlgebra, "ambient dimension must be positive");
  if (basis.empty()) throw Error(ErrorCode::InvalidAlgebra, "basis is empty");
  if (static_cast<Index>(basis.size()) > ambient_dim * ambient_dim)
    throw Error(ErrorCode::InvalidAlgebra, "more basis elements than d^2");

  std::shared_ptr<MatrixAlgebra> alg(new MatrixAlgebra());
  alg->d_ = ambient_dim;
  for (const auto& e : basis) {
    if (e.rows() != ambient_dim || e.cols() != ambient_dim)
      throw Error(ErrorCode::DimensionMismatch, "basis element is not d x d");
    if (!e.allFinite()) throw Error(ErrorCode::InvalidAlgebra, "basis element has non-finite entries");
    alg->elements_.emplace_back(e.sparseView());
  }
  if (max_abs(basis.front() - CMatrix::Identity(ambient_dim, ambient_dim)) != 0.0)
    throw Error(ErrorCode::InvalidAlgebra, "first basis element must be the identity");

  const Index n = alg->size();
  const Index d = ambient_dim;
  std::vector<Triplet> trips;
  for (Index j = 0; j < n; ++j) {
    const SparseCMatrix& e = alg->elements_[static_cast<std::size_t>(j)];
    for (Index k = 0; k < e.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(e, k); it; ++it) trips.emplace_back(it.row() + it.col() * d, j, it.value());
  }
  alg->stacked_.resize(d * d, n);
  alg->stacked_.setFromTriplets(trips.begin(), trips.end());
  alg->stacked_adj_ = alg->stacked_.adjoint();

  std::vector<Triplet> adj_trips;
  for (Index i = 0; i < n; ++i) {
    const SparseCMatrix eh = alg->element(i).adjoint();
    const SparseCVector c = alg->coords(eh);
    for (SparseCVector::InnerIterator it(c); it; ++it) adj_trips.emplace_back(it.index(), i, it.value());
  }
  alg->adjoint_map_.resize(n, n);
  alg->adjoint_map_.setFromTriplets(adj_trips.begin(), adj_trips.end());

  if (generators.empty()) {
    for (Index i = 0; i < n; ++i) generators.push_back(CVector::Unit(n, i));
  }
  for (const auto& g : generators)
    if (g.size() != n) throw Error(ErrorCode::DimensionMismatch, "generator coordinate length != N");
  alg->generators_ = std::move(generators);

  const ValidationReport report = alg->validate(tol);
  if (!report.passed()) {
    std::string what = "basis fails validation:";
    for (const auto& c : report.checks())
      if (!c.passed) what += " " + c.name + "=" + std::to_string(c.residual);
    throw Error(ErrorCode::InvalidAlgebra, what);
  }
  return alg;
}

CMatrix MatrixAlgebra::realize(const CVector& coeffs) const {
  if (coeffs.size() != size()) throw Error(ErrorCode::DimensionMismatch, "coordinate length != N");
  const CVector flat = stacked_ * coeffs;
  return Eigen::Map<const CMatrix>(flat.data(), d_, d_);
}

SparseCMatrix MatrixAlgebra::realize(const SparseCVector& coeffs) const {
  if (coeffs.size() != size()) throw Error(ErrorCode::DimensionMismatch, "coordinate length != N");
  std::vector<Triplet> trips;
  for (SparseCVector::InnerIterator k(coeffs); k; ++k) {
    if (k.value() == cplx(0.0, 0.0)) continue;
    for (SparseCMatrix::InnerIterator it(stacked_, k.index()); it; ++it)
      trips.emplace_back(it.row() % d_, it.row() / d_, k.value() * it.value());
  }
  SparseCMatrix m(d_, d_);
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune([](const Index&, const Index&, const cplx& v) { return v != cplx(0.0, 0.0); });
  return m;
}

CVector MatrixAlgebra::coords(const CMatrix& m) const {
  if (m.rows() != d_ || m.cols() != d_) throw Error(ErrorCode::DimensionMismatch, "matrix is not d x d");
  const Eigen::Map<const CVector> flat(m.data(), d_ * d_);
  return (stacked_adj_ * flat) / static_cast<double>(d_);
}

SparseCVector MatrixAlgebra::coords(const SparseCMatrix& m) const {
  if (m.rows() != d_ || m.cols() != d_) throw Error(ErrorCode::DimensionMismatch, "matrix is not d x d");
  // column f of stacked_adj_ lists the basis elements with a nonzero at flat position f
  std::vector<cplx> acc(static_cast<std::size_t>(size()), cplx(0.0, 0.0));
  std::vector<Index> touched;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator e(m, k); e; ++e) {
      if (e.value() == cplx(0.0, 0.0)) continue;
      for (SparseCMatrix::InnerIterator it(stacked_adj_, e.row() + e.col() * d_); it; ++it) {
        auto& slot = acc[static_cast<std::size_t>(it.row())];
        if (slot == cplx(0.0, 0.0)) touched.push_back(it.row());
        slot += it.value() * e.value();
      }
    }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  SparseCVector c(size());
  c.reserve(static_cast<Index>(touched.size()));
  const double inv_d = 1.0 / static_cast<double>(d_);
  for (Index i : touched) {
    const cplx v = acc[static_cast<std::size_t>(i)];
    if (v != cplx(0.0, 0.0)) c.insertBack(i) = v * inv_d;
  }
  return c;
}

double MatrixAlgebra::span_residual(const CMatrix& m) const {
  return max_abs(m - realize(coords(m)));
}

CVector MatrixAlgebra::product_coords(Index i, Index j) const {
  const SparseCMatrix p = element(i) * element(j);
  return CVector(coords(p));
}

std::vector<CMatrix> MatrixAlgebra::structure_tensor() const {
  const Index n = size();
  if (n > 256) throw Error(ErrorCode::CapExceeded, "dense structure tensor limited to N <= 256");
  std::vector<CMatrix> slices(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) slices[static_cast<std::size_t>(i)].col(j) = product_coords(i, j);
  return slices;
}

AlgebraElement MatrixAlgebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  return {coords(CMatrix(realize(a.coeffs) * realize(b.coeffs)))};
}

AlgebraElement MatrixAlgebra::adjoint(const AlgebraElement& a) const {
  if (a.coeffs.size() != size()) throw Error(ErrorCode::DimensionMismatch, "coordinate length != N");
  return {adjoint_map_ * a.coeffs.conjugate()};
}

ValidationReport MatrixAlgebra::validate(const Tolerance& tol) const {
  ValidationReport report;
  const Index n = size();
  const Index d = d_;

  report.add("identity", max_abs(element_dense(0) - CMatrix::Identity(d, d)), 0.0);

  SparseCMatrix gram = stacked_adj_ * stacked_;
  gram /= static_cast<double>(d);
  SparseCMatrix eye(n, n);
  eye.setIdentity();
  report.add("orthonormality", sparse_max_abs(gram - eye), tol.abs);

  double adj = 0.0;
  for (Index i = 0; i < n; ++i) {
    const SparseCMatrix eh = element(i).adjoint();
    const SparseCVector c = adjoint_map_.col(i);
    adj = std::max(adj, sparse_max_abs(realize(c) - eh));
  }
  report.add("adjoint_closure", adj, tol.abs);

  // A linearly independent family of d^2 matrices spans M_d, which is closed.
  double closure = 0.0;
  if (!is_full()) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        const SparseCMatrix p = element(i) * element(j);
        closure = std::max(closure, sparse_max_abs(realize(coords(p)) - p));
      }
  }
  report.add("product_closure", closure, tol.abs);
  return report;
}

bool MatrixAlgebra::same_basis(const MatrixAlgebra& other, double tol) const {
  if (this == &other) return true;
  if (d_ != other.d_ || size() != other.size()) return false;
  for (Index i = 0; i < size(); ++i)
    if (sparse_max_abs(element(i) - other.element(i)) > tol) return false;
  return true;
}

bool MatrixAlgebra::same_span(const MatrixAlgebra& other, double tol) const {
  if (same_basis(other, tol)) return true;
  if (d_ != other.d_ || size() != other.size()) return false;
  for (Index i = 0; i < other.size(); ++i) {
    const SparseCMatrix& e = other.element(i);
    if (sparse_max_abs(realize(coords(e)) - e) > tol) return false;
  }
  return true;
}

namespace {

cplx hs_inner(const CMatrix& a, const CMatrix& b, Index d) {
  return (a.conjugate().cwiseProduct(b)).sum() / static_cast<double>(d);
}

}  // namespace

AlgebraPtr make_algebra(Index ambient_dim, const std::vector<CMatrix>& generators, const Tolerance& tol) {
  tol.validate();
  const Index d = ambient_dim;
  if (d < 1) throw Error(ErrorCode::InvalidAlgebra, "ambient dimension must be positive");
  std::vector<CMatrix> gens;
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) throw Error(ErrorCode::DimensionMismatch, "generator is not d x d");
    if (!g.allFinite()) throw Error(ErrorCode::InvalidAlgebra, "generator has non-finite entries");
    gens.push_back(g);
    if (hermiticity_residual(g) > tol.abs) gens.push_back(g.adjoint());
  }

  std::vector<CMatrix> basis{CMatrix::Identity(d, d)};
  auto adjoin = [&](const CMatrix& m) {
    const double scale = hs_inner_norm(m, d);
    if (!(scale > 0.0)) return;
    CMatrix r = m;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : basis) r -= hs_inner(e, r, d) * e;
    const double norm = hs_inner_norm(r, d);
    if (norm <= tol.rel * scale || norm <= tol.abs) return;
    if (static_cast<Index>(basis.size()) >= d * d)
      throw Error(ErrorCode::ClosureOverflow, "closure exceeded d^2 elements");
    basis.push_back(r / norm);
  };

  // Left multiplication by generators applied to every basis element reaches all words.
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const CMatrix current = basis[p];
    for (const auto& g : gens) adjoin(g * current);
  }

  std::vector<CVector> gen_coords;
  {
    // coordinates against the orthonormal basis
    for (const auto& g : gens) {
      CVector c(static_cast<Index>(basis.size()));
      for (std::size_t k = 0; k < basis.size(); ++k) c(static_cast<Index>(k)) = hs_inner(basis[k], g, d);
      gen_coords.push_back(c);
    }
  }
  if (gen_coords.empty()) gen_coords.push_back(CVector::Unit(static_cast<Index>(basis.size()), 0));
  return MatrixAlgebra::from_basis(d, basis, std::move(gen_coords), tol);
}

Index pauli_index(const std::vector<int>& letters) {
  Index k = 0;
  for (int l : letters) {
    if (l < 0 || l > 3) throw std::invalid_argument("Pauli letter must be 0..3");
    k = 4 * k + l;
  }
  return k;
}

AlgebraPtr pauli_algebra(int sites) {
  if (sites < 1) throw std::invalid_argument("pauli_algebra needs at least one site");
  if (sites > 6) throw Error(ErrorCode::CapExceeded, "pauli_algebra limited to 6 sites (N = 4096)");
  const Index d = Index{1} << sites;
  const Index n = d * d;
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    // letters, site 1 first
    std::vector<int> letters(static_cast<std::size_t>(sites));
    Index rest = k;
    for (int s = sites - 1; s >= 0; --s) {
      letters[static_cast<std::size_t>(s)] = static_cast<int>(rest % 4);
      rest /= 4;
    }
    CMatrix e = CMatrix::Zero(d, d);
    for (Index col = 0; col < d; ++col) {
      Index row = 0;
      cplx value(1.0, 0.0);
      for (int s = 0; s < sites; ++s) {
        const int bit_pos = sites - 1 - s;
        const int bit = static_cast<int>((col >> bit_pos) & 1);
        int out_bit = bit;
        switch (letters[static_cast<std::size_t>(s)]) {
          case 0: break;
          case 1: out_bit = 1 - bit; break;
          case 2:
            out_bit = 1 - bit;
            value *= bit == 0 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
            break;
          case 3:
            if (bit == 1) value = -value;
            break;
        }
        row |= static_cast<Index>(out_bit) << bit_pos;
      }
      e(row, col) = value;
    }
    basis.push_back(std::move(e));
  }
  std::vector<CVector> gens;
  for (int s = 0; s < sites; ++s)
    for (int letter : {1, 3}) {
      std::vector<int> letters(static_cast<std::size_t>(sites), 0);
      letters[static_cast<std::size_t>(s)] = letter;
      gens.push_back(CVector::Unit(n, pauli_index(letters)));
    }
  return MatrixAlgebra::from_basis(d, basis, std::move(gens));
}

AlgebraPtr full_matrix_algebra(Index d) {
  if (d < 1) throw std::invalid_argument("full_matrix_algebra needs d >= 1");
  if (d > 64) throw Error(ErrorCode::CapExceeded, "full_matrix_algebra limited to d <= 64");
  std::vector<CMatrix> basis;
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      CMatrix e = CMatrix::Zero(d, d);
      for (Index j = 0; j < d; ++j) e((j + a) % d, j) = unit_root(b * j, d);
      basis.push_back(std::move(e));
    }
  const Index n = d * d;
  std::vector<CVector> gens;
  if (d > 1) {
    const Index shift = 1 * d + 0;  // X
    const Index clock = 0 * d + 1;  // Z
    const Index shift_adj = (d - 1) * d + 0;
    const Index clock_adj = 0 * d + (d - 1);
    for (Index k : {shift, clock, shift_adj, clock_adj}) gens.push_back(CVector::Unit(n, k));
  } else {
    gens.push_back(CVector::Unit(n, 0));
  }
  return MatrixAlgebra::from_basis(d, basis, std::move(gens));
}

// ------------------------------------------------------------------ states

CMatrix state_density(const MatrixAlgebra& alg, const State& omega) {
  if (omega.values.size() != alg.size()) throw Error(ErrorCode::DimensionMismatch, "state length != N");
  return alg.realize(CVector(omega.values.conjugate())).adjoint() / static_cast<double>(alg.ambient_dim());
}

ValidationReport check_state(const MatrixAlgebra& alg, const State& omega, const Tolerance& tol) {
  if (omega.values.size() != alg.size()) throw Error(ErrorCode::DimensionMismatch, "state length != N");
  ValidationReport report;
  if (!omega.values.allFinite()) {
    report.add_verdict("finite", 1.0, 0.0, false);
    return report;
  }
  const Index n = alg.size();
  const Index d = alg.ambient_dim();
  report.add("normalization", std::abs(omega.values(0) - cplx(1.0, 0.0)), tol.abs);

  const CVector on_adjoints = alg.adjoint_map().transpose() * omega.values;
  report.add("hermiticity", max_abs(CMatrix(on_adjoints - omega.values.conjugate())), tol.abs);

  const CMatrix dens = state_density(alg, omega);
  double min_eig = 0.0;
  if (n <= 1024) {
    // G_ij = omega(E_i^H E_j) = <vec E_i, vec(E_j D)>
    CMatrix right(d * d, n);
    for (Index j = 0; j < n; ++j) {
      const CMatrix ed = alg.element(j) * dens;
      right.col(j) = Eigen::Map<const CVector>(ed.data(), d * d);
    }
    CMatrix gram(n, n);
    for (Index i = 0; i < n; ++i) {
      const CMatrix ei = alg.element_dense(i);
      const Eigen::Map<const CVector> flat(ei.data(), d * d);
      gram.row(i) = flat.adjoint() * right;
    }
    const CMatrix herm = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    min_eig = solver.eigenvalues().minCoeff();
  } else {
    // For D in the algebra, spec(Gram) = d * spec(D).
    const CMatrix herm = 0.5 * (dens + dens.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    min_eig = static_cast<double>(d) * solver.eigenvalues().minCoeff();
  }
  report.add("positivity", std::max(0.0, -min_eig), tol.abs);
  return report;
}

State state_from_density(const MatrixAlgebra& alg, const CMatrix& rho) {
  const Index d = alg.ambient_dim();
  if (rho.rows() != d || rho.cols() != d) throw Error(ErrorCode::DimensionMismatch, "density is not d x d");
  State s{CVector::Zero(alg.size())};
  for (Index k = 0; k < alg.size(); ++k) {
    const SparseCMatrix& e = alg.element(k);
    cplx acc(0.0, 0.0);
    for (Index c = 0; c < e.outerSize(); ++c)
      for (SparseCMatrix::InnerIterator it(e, c); it; ++it) acc += rho(it.col(), it.row()) * it.value();
    s.values(k) = acc;
  }
  return s;
}

State vector_state(const MatrixAlgebra& alg, const CVector& psi) {
  const Index d = alg.ambient_dim();
  if (psi.size() != d) throw Error(ErrorCode::DimensionMismatch, "vector length != d");
  State s{CVector::Zero(alg.size())};
  for (Index k = 0; k < alg.size(); ++k) {
    const SparseCMatrix& e = alg.element(k);
    cplx acc(0.0, 0.0);
    for (Index c = 0; c < e.outerSize(); ++c)
      for (SparseCMatrix::InnerIterator it(e, c); it; ++it)
        acc += std::conj(psi(it.row())) * it.value() * psi(it.col());
    s.values(k) = acc;
  }
  return s;
}

cplx evaluate(const State& omega, const AlgebraElement& a) {
  if (omega.values.size() != a.coeffs.size()) throw Error(ErrorCode::DimensionMismatch, "length mismatch");
  return (omega.values.transpose() * a.coeffs)(0);
}

// ----------------------------------------------------------- automorphisms

ValidationReport validate_automorphism(const MatrixAlgebra& alg, const SparseCMatrix& matrix,
                                       const SparseCMatrix& inverse, const Tolerance& tol) {
  const Index n = alg.size();
  if (matrix.rows() != n || matrix.cols() != n || inverse.rows() != n || inverse.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "automorphism matrix is not N x N");
  ValidationReport report;
  SparseCMatrix eye(n, n);
  eye.setIdentity();
  report.add("bijective", std::max(sparse_max_abs(matrix * inverse - eye), sparse_max_abs(inverse * matrix - eye)),
             tol.abs);

  std::vector<SparseCMatrix> images;
  images.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) images.push_back(alg.realize(SparseCVector(matrix.col(j))));

  double mult = 0.0;
  if (n <= 256) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        const SparseCVector c = alg.coords(SparseCMatrix(alg.element(i) * alg.element(j)));
        const SparseCMatrix lhs = alg.realize(SparseCVector(matrix * c));
        const SparseCMatrix rhs = images[static_cast<std::size_t>(i)] * images[static_cast<std::size_t>(j)];
        mult = std::max(mult, sparse_max_abs(lhs - rhs));
      }
  } else {
    // Every element is a polynomial in the generators, so generator x basis
    // pairs imply multiplicativity on all pairs.
    for (const auto& g : alg.generators()) {
      const SparseCVector gs = prune_exact(g);
      const SparseCMatrix gm = alg.realize(gs);
      const SparseCMatrix image_g = alg.realize(SparseCVector(matrix * gs));
      for (Index j = 0; j < n; ++j) {
        const SparseCVector c = alg.coords(SparseCMatrix(gm * alg.element(j)));
        const SparseCMatrix lhs = alg.realize(SparseCVector(matrix * c));
        const SparseCMatrix rhs = image_g * images[static_cast<std::size_t>(j)];
        mult = std::max(mult, sparse_max_abs(lhs - rhs));
      }
    }
  }
  report.add("multiplicative", mult, tol.abs);

  double star = 0.0;
  for (Index i = 0; i < n; ++i) {
    const SparseCVector adj_col = alg.adjoint_map().col(i);
    const SparseCMatrix lhs = alg.realize(SparseCVector(matrix * adj_col));
    const SparseCMatrix rhs = images[static_cast<std::size_t>(i)].adjoint();
    star = std::max(star, sparse_max_abs(lhs - rhs));
  }
  report.add("star_preserving", star, tol.abs);
  return report;
}

Automorphism Automorphism::identity(const MatrixAlgebra& alg) {
  SparseCMatrix eye(alg.size(), alg.size());
  eye.setIdentity();
  return Automorphism(eye, eye);
}

Automorphism Automorphism::from_matrices(const MatrixAlgebra& alg, SparseCMatrix matrix, SparseCMatrix inverse,
                                         const Tolerance& tol) {
  const ValidationReport report = validate_automorphism(alg, matrix, inverse, tol);
  if (!report.passed()) {
    std::string what = "not a *-automorphism:";
    for (const auto& c : report.checks())
      if (!c.passed) what += " " + c.name + "=" + std::to_string(c.residual);
    throw Error(ErrorCode::InvalidAutomorphism, what);
  }
  matrix.makeCompressed();
  inverse.makeCompressed();
  return Automorphism(std::move(matrix), std::move(inverse));
}

Automorphism Automorphism::from_matrix(const MatrixAlgebra& alg, const CMatrix& matrix, const Tolerance& tol) {
  const Index n = alg.size();
  if (matrix.rows() != n || matrix.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "automorphism matrix is not N x N");
  if (!matrix.allFinite()) throw Error(ErrorCode::InvalidAutomorphism, "non-finite entries");
  Eigen::FullPivLU<CMatrix> lu(matrix);
  if (!lu.isInvertible()) throw Error(ErrorCode::InvalidAutomorphism, "coordinate matrix is singular");
  const CMatrix inv = lu.inverse();
  return from_matrices(alg, matrix.sparseView(), inv.sparseView(), tol);
}

AlgebraElement apply(const Automorphism& alpha, const AlgebraElement& a) {
  if (a.coeffs.size() != alpha.dim()) throw Error(ErrorCode::DimensionMismatch, "element length != N");
  return {alpha.matrix() * a.coeffs};
}

Automorphism compose(const Automorphism& alpha, const Automorphism& beta) {
  if (alpha.dim() != beta.dim()) throw Error(ErrorCode::DimensionMismatch, "automorphisms on different algebras");
  SparseCMatrix m = alpha.matrix_ * beta.matrix_;
  SparseCMatrix inv = beta.inverse_ * alpha.inverse_;
  return Automorphism(std::move(m), std::move(inv));
}

Automorphism inverse(const Automorphism& alpha) { return Automorphism(alpha.inverse_, alpha.matrix_); }

namespace {

SparseCMatrix conjugation_matrix(const MatrixAlgebra& alg, const SparseCMatrix& p, const Tolerance& tol) {
  const Index n = alg.size();
  std::vector<Triplet> trips;
  const SparseCMatrix ph = p.adjoint();
  for (Index j = 0; j < n; ++j) {
    const SparseCMatrix image = p * alg.element(j) * ph;
    const SparseCVector c = alg.coords(image);
    const double resid = sparse_max_abs(alg.realize(c) - image);
    if (resid > tol.abs)
      throw Error(ErrorCode::NotInAlgebra, "conjugate of basis element " + std::to_string(j) +
                                               " leaves the algebra (residual " + std::to_string(resid) + ")");
    for (SparseCVector::InnerIterator it(c); it; ++it) trips.emplace_back(it.index(), j, it.value());
  }
  SparseCMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

Automorphism spatial_automorphism(const MatrixAlgebra& alg, const CMatrix& p, const Tolerance& tol) {
  const Index d = alg.ambient_dim();
  if (p.rows() != d || p.cols() != d) throw Error(ErrorCode::DimensionMismatch, "unitary is not d x d");
  const double ures = unitarity_residual(p);
  if (!(ures <= tol.abs)) throw Error(ErrorCode::NotUnitary, "||p^H p - I||_max = " + std::to_string(ures));
  const SparseCMatrix ps = p.sparseView();
  SparseCMatrix forward = conjugation_matrix(alg, ps, tol);
  SparseCMatrix backward = conjugation_matrix(alg, SparseCMatrix(ps.adjoint()), tol);
  return Automorphism::from_matrices(alg, std::move(forward), std::move(backward), tol);
}

Automorphism inner_automorphism(const MatrixAlgebra& alg, const AlgebraElement& u, const Tolerance& tol) {
  if (u.coeffs.size() != alg.size()) throw Error(ErrorCode::DimensionMismatch, "element length != N");
  return spatial_automorphism(alg, alg.realize(u.coeffs), tol);
}

Automorphism swap_blocks(const MatrixAlgebra& alg, const Tolerance& tol) {
  const Index d = alg.ambient_dim();
  if (d % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "swap_blocks needs an even ambient dimension");
  const Index h = d / 2;
  CMatrix p = CMatrix::Zero(d, d);
  p.topRightCorner(h, h).setIdentity();
  p.bottomLeftCorner(h, h).setIdentity();
  return spatial_automorphism(alg, p, tol);
}

State pushforward_state(const State& omega, const Automorphism& alpha) {
  if (omega.values.size() != alpha.dim()) throw Error(ErrorCode::DimensionMismatch, "state length != N");
  return {alpha.inverse_matrix().transpose() * omega.values};
}

}  // namespace wigrep
