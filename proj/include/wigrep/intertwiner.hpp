#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wigrep/gns.hpp"

namespace wigrep {

enum class IntertwinerMethod {
  Auto,           // CyclicSupport when the source cyclic vector is cyclic, else Vectorized
  Vectorized,     // common null space of I (x) pi'(g) - pi(g)^T (x) I over generators g
  CyclicSupport,  // X -> X Omega identifies the space with the range of pi'(s), s = supp(omega)
};

const char* to_string(IntertwinerMethod method);

struct IntertwinerOptions {
  Tolerance tol{};
  std::uint64_t seed = 20240601;
  int draws = 32;
  IntertwinerMethod method = IntertwinerMethod::Auto;
};

struct IntertwinerReport {
  Index space_dim = 0;
  std::vector<CMatrix> basis;  // m' x m, orthonormal under tr(X^H Y)
  bool has_unitary = false;
  std::optional<CMatrix> witness;
  double basis_residual = 0.0;    // max over basis and all E_i of ||X pi(E_i) - pi'(E_i) X||_max
  double witness_residual = 0.0;  // same for the witness (0 when absent)
  double witness_unitarity = 0.0;
  std::uint64_t seed = 0;
  int draws_used = 0;
  IntertwinerMethod method = IntertwinerMethod::Auto;
};

/// max_i ||X pi_a(E_i) - pi_b(E_i) X||_max.
double intertwining_residual(const CMatrix& x, const GnsRepresentation& a, const GnsRepresentation& b);

/// All X with X pi_a(A) = pi_b(A) X. Throws AlgebraMismatch for reps of different
/// algebras and CapExceeded when the vectorized system exceeds m m' > 2^16.
IntertwinerReport intertwiner_space(const GnsRepresentation& a, const GnsRepresentation& b,
                                    const IntertwinerOptions& opts = {});

struct Equivalence {
  bool equivalent = false;
  std::optional<CMatrix> witness;
  double residual = 0.0;  // witness intertwining residual
  IntertwinerReport report;
};

Equivalence is_unitarily_equivalent(const GnsRepresentation& a, const GnsRepresentation& b,
                                    const IntertwinerOptions& opts = {});

/// Equivalence of pi and pi o alpha. A witness U satisfies U pi(A) U^H = pi(alpha(A)).
Equivalence is_implementable(const GnsRepresentation& rep, const Automorphism& alpha,
                             const IntertwinerOptions& opts = {});

Index commutant_dim(const GnsRepresentation& rep, const IntertwinerOptions& opts = {});

}  // namespace wigrep
