#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "wigrep/numerics.hpp"
#include "wigrep/validation.hpp"

namespace wigrep {

using SparseCVector = Eigen::SparseVector<cplx>;

/// Coordinates of an element over the basis of a MatrixAlgebra.
struct AlgebraElement {
  CVector coeffs;
};

/// A state, stored by its values on the basis: values[i] = omega(E_i).
struct State {
  CVector values;
};

class MatrixAlgebra;
using AlgebraPtr = std::shared_ptr<const MatrixAlgebra>;

/**
 * Unital *-subalgebra of d x d complex matrices.
 *
 * The basis is orthonormal for <A, B> = tr(A^H B) / d and E_0 is the identity,
 * so coordinates are plain Hilbert-Schmidt overlaps. Basis elements are kept
 * sparse; the Pauli-string and clock-shift bases used for spin chains have d
 * nonzeros each.
 *
 * `generators()` holds a generating set closed under adjoint. Several checks
 * (GNS homomorphism, automorphism multiplicativity on large algebras) rely on
 * it, so it must really generate the span.
 */
class MatrixAlgebra {
 public:
  /// Validates every structural invariant; throws Error(InvalidAlgebra) on failure.
  /// An empty generator list means "every basis element".
  static AlgebraPtr from_basis(Index ambient_dim, const std::vector<CMatrix>& basis,
                               std::vector<CVector> generators = {}, const Tolerance& tol = {});

  Index ambient_dim() const { return d_; }
  Index size() const { return static_cast<Index>(elements_.size()); }
  bool is_full() const { return size() == d_ * d_; }

  const SparseCMatrix& element(Index i) const { return elements_.at(static_cast<std::size_t>(i)); }
  CMatrix element_dense(Index i) const { return CMatrix(element(i)); }

  CMatrix realize(const CVector& coeffs) const;
  SparseCMatrix realize(const SparseCVector& coeffs) const;
  CVector coords(const CMatrix& m) const;
  SparseCVector coords(const SparseCMatrix& m) const;
  /// ||m - realize(coords(m))||_max: zero iff m lies in the algebra.
  double span_residual(const CMatrix& m) const;

  /// Structure constants c_{ij.}: coordinates of E_i E_j.
  CVector product_coords(Index i, Index j) const;
  /// Dense tensor, slice i has (k, j) entry c_{ijk}. Refuses N > 256.
  std::vector<CMatrix> structure_tensor() const;

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement adjoint(const AlgebraElement& a) const;
  /// Column i holds the coordinates of E_i^H.
  const SparseCMatrix& adjoint_map() const { return adjoint_map_; }

  const std::vector<CVector>& generators() const { return generators_; }

  /// Re-measures orthonormality, identity, adjoint and product closure.
  ValidationReport validate(const Tolerance& tol = {}) const;

  /// Same ambient dimension and the same basis entrywise.
  bool same_basis(const MatrixAlgebra& other, double tol = 1e-10) const;
  /// Same ambient dimension and the same linear span.
  bool same_span(const MatrixAlgebra& other, double tol = 1e-10) const;

 private:
  MatrixAlgebra() = default;

  Index d_ = 0;
  std::vector<SparseCMatrix> elements_;
  SparseCMatrix stacked_;      // d^2 x N, column i = vec(E_i)
  SparseCMatrix stacked_adj_;  // N x d^2
  SparseCMatrix adjoint_map_;  // N x N
  std::vector<CVector> generators_;
};

/// Smallest unital *-closed algebra containing the generators.
AlgebraPtr make_algebra(Index ambient_dim, const std::vector<CMatrix>& generators,
                        const Tolerance& tol = {});

/// M_2^{(x) n} with the Pauli-string basis. Index k written in base 4 (site 1
/// most significant) selects I, X, Y, Z per site.
AlgebraPtr pauli_algebra(int sites);

/// M_d with the clock-shift basis X^a Z^b, index a * d + b.
AlgebraPtr full_matrix_algebra(Index d);

/// Basis index of a Pauli string given per-site letters 0..3 (I, X, Y, Z).
Index pauli_index(const std::vector<int>& letters);

// ---------------------------------------------------------------- states

ValidationReport check_state(const MatrixAlgebra& alg, const State& omega, const Tolerance& tol = {});
State state_from_density(const MatrixAlgebra& alg, const CMatrix& rho);
State vector_state(const MatrixAlgebra& alg, const CVector& psi);
/// The unique D in the algebra with omega(A) = tr(D A).
CMatrix state_density(const MatrixAlgebra& alg, const State& omega);
cplx evaluate(const State& omega, const AlgebraElement& a);

// ---------------------------------------------------------- automorphisms

/// A validated *-automorphism acting on basis coordinates.
class Automorphism {
 public:
  static Automorphism identity(const MatrixAlgebra& alg);
  /// Validates and throws Error(InvalidAutomorphism) on failure.
  static Automorphism from_matrices(const MatrixAlgebra& alg, SparseCMatrix matrix, SparseCMatrix inverse,
                                    const Tolerance& tol = {});
  static Automorphism from_matrix(const MatrixAlgebra& alg, const CMatrix& matrix, const Tolerance& tol = {});

  Index dim() const { return matrix_.rows(); }
  const SparseCMatrix& matrix() const { return matrix_; }
  const SparseCMatrix& inverse_matrix() const { return inverse_; }

 private:
  friend Automorphism compose(const Automorphism&, const Automorphism&);
  friend Automorphism inverse(const Automorphism&);
  Automorphism(SparseCMatrix m, SparseCMatrix inv) : matrix_(std::move(m)), inverse_(std::move(inv)) {}

  SparseCMatrix matrix_;
  SparseCMatrix inverse_;
};

/// Bijectivity, multiplicativity and *-preservation residuals. Multiplicativity
/// runs over all basis pairs for N <= 256 and over generator x basis pairs above.
ValidationReport validate_automorphism(const MatrixAlgebra& alg, const SparseCMatrix& matrix,
                                       const SparseCMatrix& inverse, const Tolerance& tol = {});

AlgebraElement apply(const Automorphism& alpha, const AlgebraElement& a);
/// (alpha o beta)(A) = alpha(beta(A)).
Automorphism compose(const Automorphism& alpha, const Automorphism& beta);
Automorphism inverse(const Automorphism& alpha);

/// A -> u A u^H for a unitary u in the algebra.
Automorphism inner_automorphism(const MatrixAlgebra& alg, const AlgebraElement& u, const Tolerance& tol = {});
/// A -> p A p^H for an ambient unitary p normalizing the algebra (p need not lie in it).
Automorphism spatial_automorphism(const MatrixAlgebra& alg, const CMatrix& p, const Tolerance& tol = {});
/// Exchanges the two halves of the ambient space: p = [[0, I], [I, 0]].
Automorphism swap_blocks(const MatrixAlgebra& alg, const Tolerance& tol = {});

/// omega o alpha^{-1}.
State pushforward_state(const State& omega, const Automorphism& alpha);

}  // namespace wigrep
