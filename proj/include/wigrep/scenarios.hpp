#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wigrep/intertwiner.hpp"

namespace wigrep {

struct Scenario {
  std::string name;
  AlgebraPtr algebra;
  State state;
  Automorphism automorphism;
  bool expected_broken = false;
  std::string notes;
  std::optional<CMatrix> implementer;  // ambient unitary realizing alpha, when inner
};

/// Diagonal C^2 inside M_2, evaluation at the first coordinate, coordinate swap.
Scenario scenario_two_point_swap();

/// M_2 (+) M_2 inside M_4, pure state on the first block, block swap.
Scenario scenario_block_swap();

/// M_d, pure state phi (default e_1), alpha(A) = u A u^H. Throws NotUnitary.
Scenario scenario_elementary_qm(Index d, const CMatrix& u, std::optional<CVector> phi = std::nullopt);

/// M_2^{(x) n}, product state (x)|+x><+x|, alpha = conjugation by (x)(i sigma_z).
/// Throws CapExceeded for n > 6.
Scenario scenario_ferromagnet(int n);

/// Catalog lookup; nullopt for unknown names. `n` and `d` parametrize
/// ferromagnet and elementary_qm (which uses the clock matrix as u).
std::optional<Scenario> find_scenario(const std::string& name, int n = 2, Index d = 2);
std::vector<std::string> scenario_names();

struct ChainSweepRow {
  int n = 0;
  int k = 0;  // probe width actually used, min(k_local, n)
  bool implementable = false;
  double implementer_residual = 0.0;
  cplx cross_sector{0.0, 0.0};
  std::optional<std::pair<Index, Index>> gns_dims;
};

/**
 * Rows n = 1..n_max. For n <= 6 implementability comes from the GNS
 * representation of the ferromagnet scenario; above that the implementer
 * (x)(i sigma_z) is checked on state vectors: residual = ||u psi+ - c psi-||_max
 * with the best phase c. The cross element <psi+| P^{(x)k} (x) I |psi-> is
 * computed on the 2^n-dimensional vectors, P = sigma_x, sigma_y or sigma_z.
 * Throws CapExceeded for n_max > 20.
 */
std::vector<ChainSweepRow> chain_sweep(int n_max, int k_local = 1, char probe = 'z', const IntertwinerOptions& opts = {});

/// <psi+| P on sites 1..k |psi-> for psi+- = (x)^n |+-x>.
cplx cross_sector_element(int n, int k, char probe);

}  // namespace wigrep
