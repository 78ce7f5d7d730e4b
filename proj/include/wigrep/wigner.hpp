#pragma once

#include <cstdint>
#include <vector>

#include "wigrep/intertwiner.hpp"

namespace wigrep {

/// W : H -> H' with W Omega = Omega' and W pi(alpha^{-1}(A)) = pi'(A) W.
struct WignerUnitary {
  CMatrix matrix;
  ValidationReport certificates;  // unitarity, cyclic_vector, intertwining, assembly

  bool passed() const { return certificates.passed(); }
  double residual(const char* name) const;
};

/**
 * Builds W from its defining formula W pi(E_i) Omega = pi'(alpha(E_i)) Omega',
 * solved in the least-squares sense over the whole spanning set.
 *
 * Throws NotGns if src is not a GNS representation of omega (or tgt of
 * omega o alpha^{-1}), InconsistentState if tgt's cyclic vector does not
 * reproduce omega o alpha^{-1}. `order`, when given, is the enumeration of the
 * spanning set to use.
 */
WignerUnitary wigner_unitary(const MatrixAlgebra& alg, const State& omega, const Automorphism& alpha,
                             const GnsRepresentation& src, const GnsRepresentation& tgt, const Tolerance& tol = {},
                             const std::vector<Index>& order = {});

/// (pi')^*(W x) = pi^*(x) o alpha^{-1} on each sample.
ValidationReport verify_state_action(const CMatrix& w, const GnsRepresentation& src, const GnsRepresentation& tgt,
                                     const Automorphism& alpha, const std::vector<CVector>& samples);

/// | |<x, y>| - |<W x, W y>| | over sample pairs.
ValidationReport verify_transition_probabilities(const CMatrix& w,
                                                 const std::vector<std::pair<CVector, CVector>>& pairs);

struct SecondCorollary {
  bool intertwines = false;
  double intertwining_residual = 0.0;  // max_i ||W pi(E_i) - pi'(E_i) W||_max; the degree of breaking
  ValidationReport checks;             // populated only when W intertwines pi with pi'
};

SecondCorollary check_second_corollary(const CMatrix& w, const GnsRepresentation& src, const GnsRepresentation& tgt,
                                       const Automorphism& alpha, const std::vector<CVector>& samples);

/// Residual of span{W pi(E_i) W^H} = span{pi'(E_i)} in both directions.
double set_level_residual(const CMatrix& w, const GnsRepresentation& src, const GnsRepresentation& tgt,
                          const Tolerance& tol = {});

struct Contrast {
  CMatrix w;  // Wigner unitary of the same-space construction pi' = pi o alpha^{-1}
  CMatrix v;  // intertwining unitary V pi(A) V^H = pi(alpha(A)), phase fixed
  ValidationReport certificates;
};

/// Throws NotImplementable when no intertwining unitary exists.
Contrast contrast_W_and_V(const GnsRepresentation& rep, const Automorphism& alpha, int samples = 16,
                          const IntertwinerOptions& opts = {});

/// Seeded unit vectors for property checks.
std::vector<CVector> sample_unit_vectors(Index dim, int count, std::uint64_t seed);

}  // namespace wigrep
