#pragma once

#include <vector>

#include "wigrep/algebra.hpp"

namespace wigrep {

/**
 * (H, pi, Omega) for a state on a MatrixAlgebra, H = C^m.
 *
 * quotient is m x N: column j is the class of E_j, i.e. pi(E_j) Omega.
 */
struct GnsRepresentation {
  AlgebraPtr algebra;
  Index hilbert_dim = 0;
  std::vector<CMatrix> rep;
  CVector cyclic_vector;
  CMatrix quotient;

  Index size() const { return static_cast<Index>(rep.size()); }
};

/**
 * GNS construction.
 *
 * With D the density of omega inside the algebra and D = Phi Phi^H on its
 * support, A -> A Phi identifies the quotient of the algebra by the null ideal
 * with {A Phi} inside C^{d x r}, and pi acts by left multiplication. For a full
 * matrix algebra this space is all of C^{d x r} and pi(A) = I_r (x) A; otherwise
 * an orthonormal basis of the span is taken from the Gram operator of the
 * vectors vec(E_j Phi). Throws InvalidState when check_state fails and
 * CapExceeded for N > 4096.
 */
GnsRepresentation gns_construct(AlgebraPtr alg, const State& omega, const Tolerance& tol = {});

/// State reproduction, cyclicity (rank of {pi(E_j) Omega}), unit norm, pi(I) = I
/// and the *-homomorphism property. Multiplicativity is checked on generator x
/// basis pairs, which covers every pair once pi(I) = I holds.
ValidationReport verify_gns(const MatrixAlgebra& alg, const State& omega, const GnsRepresentation& rep,
                            const Tolerance& tol = {});

/// The vector state <x, pi(.) x>. Throws NotUnit unless ||x|| = 1.
State vector_to_state(const GnsRepresentation& rep, const CVector& x, const Tolerance& tol = {});

/// pi(A) for an element given by coordinates.
CMatrix rep_of(const GnsRepresentation& rep, const CVector& coeffs);

/// pi o alpha^{-1} on the same space with the same cyclic vector.
GnsRepresentation compose_rep(const GnsRepresentation& rep, const Automorphism& alpha);

/// pi_a (+) pi_b with cyclic vector Omega_a (+) 0 (generally not cyclic).
GnsRepresentation direct_sum(const GnsRepresentation& a, const GnsRepresentation& b);

/// m x N matrix with column j = pi(E_j) x.
CMatrix orbit_matrix(const GnsRepresentation& rep, const CVector& x);

}  // namespace wigrep
