#include "wigrep/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wigrep {

namespace {

CMatrix diag2(cplx a, cplx b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CMatrix sigma_x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix sigma_z() { return diag2(1.0, -1.0); }

CMatrix block(const CMatrix& m, bool second) {
  CMatrix out = CMatrix::Zero(4, 4);
  out.block(second ? 2 : 0, second ? 2 : 0, 2, 2) = m;
  return out;
}

cplx i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// psi+- = (x)^n |+-x>, site 1 on the most significant bit.
CVector product_x_state(int n, bool minus) {
  const Index dim = Index{1} << n;
  const double amp = std::pow(2.0, -0.5 * n);
  CVector v(dim);
  for (Index b = 0; b < dim; ++b) {
    const bool odd = minus && (__builtin_popcountll(static_cast<unsigned long long>(b)) % 2 == 1);
    v(b) = odd ? -amp : amp;
  }
  return v;
}

}  // namespace

Scenario scenario_two_point_swap() {
  AlgebraPtr alg = make_algebra(2, {diag2(1.0, 0.0), diag2(0.0, 1.0)});
  CVector e1 = CVector::Unit(2, 0);
  return Scenario{"two_point_swap",
                  alg,
                  vector_state(*alg, e1),
                  spatial_automorphism(*alg, sigma_x()),
                  true,
                  "diagonal C^2 in M_2; evaluation state at the first point; swap of the two points",
                  std::nullopt};
}

Scenario scenario_block_swap() {
  const std::vector<CMatrix> gens{block(sigma_x(), false), block(sigma_z(), false), block(sigma_x(), true),
                                  block(sigma_z(), true)};
  AlgebraPtr alg = make_algebra(4, gens);
  return Scenario{"block_swap",
                  alg,
                  vector_state(*alg, CVector::Unit(4, 0)),
                  swap_blocks(*alg),
                  true,
                  "M_2 (+) M_2 block diagonal in M_4; pure state on the first block; exchange of the blocks",
                  std::nullopt};
}

Scenario scenario_elementary_qm(Index d, const CMatrix& u, std::optional<CVector> phi) {
  AlgebraPtr alg = full_matrix_algebra(d);
  if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "u is not d x d");
  const CVector psi = phi ? *phi : CVector(CVector::Unit(d, 0));
  if (psi.size() != d) throw Error(ErrorCode::DimensionMismatch, "phi has the wrong length");
  if (!(std::abs(psi.norm() - 1.0) <= 1e-10)) throw Error(ErrorCode::NotUnit, "phi is not a unit vector");
  Automorphism alpha = spatial_automorphism(*alg, u);
  return Scenario{"elementary_qm",
                  alg,
                  vector_state(*alg, psi),
                  std::move(alpha),
                  false,
                  "B(H) with H = C^d in its identity representation; inner symmetry A -> u A u^H",
                  u};
}

Scenario scenario_ferromagnet(int n) {
  if (n < 1) throw std::invalid_argument("ferromagnet needs n >= 1");
  if (n > 6) throw Error(ErrorCode::CapExceeded, "ferromagnet scenario limited to n <= 6 (N = 4096)");
  AlgebraPtr alg = pauli_algebra(n);
  CVector u = CVector::Zero(alg->size());
  u(pauli_index(std::vector<int>(static_cast<std::size_t>(n), 3))) = i_power(n);
  Automorphism alpha = inner_automorphism(*alg, AlgebraElement{u});
  return Scenario{"ferromagnet",
                  alg,
                  vector_state(*alg, product_x_state(n, false)),
                  std::move(alpha),
                  false,
                  "n-site truncation; all spins along +x; rotation by 180 degrees about z per site, implemented by "
                  "(x)(i sigma_z); finite n has no outer automorphism, so the symmetry is unbroken",
                  alg->realize(u)};
}

std::vector<std::string> scenario_names() { return {"two_point_swap", "block_swap", "elementary_qm", "ferromagnet"}; }

std::optional<Scenario> find_scenario(const std::string& name, int n, Index d) {
  if (name == "two_point_swap") return scenario_two_point_swap();
  if (name == "block_swap") return scenario_block_swap();
  if (name == "ferromagnet") return scenario_ferromagnet(n);
  if (name == "elementary_qm") {
    if (d < 1) throw std::invalid_argument("elementary_qm needs d >= 1");
    CMatrix clock = CMatrix::Zero(d, d);
    for (Index j = 0; j < d; ++j)
      clock(j, j) = (4 * j) % d == 0 ? i_power(static_cast<int>(4 * j / d))
                                     : std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / d);
    return scenario_elementary_qm(d, clock);
  }
  return std::nullopt;
}

cplx cross_sector_element(int n, int k, char probe) {
  if (n < 1 || n > 20) throw Error(ErrorCode::CapExceeded, "state vectors limited to 1 <= n <= 20");
  if (k < 0) throw std::invalid_argument("probe width must be non-negative");
  if (probe != 'x' && probe != 'y' && probe != 'z') throw std::invalid_argument("probe must be x, y or z");
  k = std::min(k, n);
  const CVector plus = product_x_state(n, false);
  const CVector minus = product_x_state(n, true);
  const Index dim = plus.size();
  cplx acc(0.0, 0.0);
  for (Index b = 0; b < dim; ++b) {
    Index row = b;
    cplx factor(1.0, 0.0);
    for (int s = 1; s <= k; ++s) {
      const int pos = n - s;
      const int bit = static_cast<int>((b >> pos) & 1);
      switch (probe) {
        case 'x': row ^= Index{1} << pos; break;
        case 'y':
          row ^= Index{1} << pos;
          factor *= bit == 0 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
          break;
        default:
          if (bit == 1) factor = -factor;
      }
    }
    acc += std::conj(plus(row)) * factor * minus(b);
  }
  return acc;
}

std::vector<ChainSweepRow> chain_sweep(int n_max, int k_local, char probe, const IntertwinerOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  if (n_max > 20) throw Error(ErrorCode::CapExceeded, "chain sweep limited to n_max <= 20");
  if (k_local < 0) throw std::invalid_argument("k_local must be non-negative");
  std::vector<ChainSweepRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    ChainSweepRow row;
    row.n = n;
    row.k = std::min(k_local, n);
    row.cross_sector = cross_sector_element(n, row.k, probe);
    if (n <= 6) {
      const Scenario sc = scenario_ferromagnet(n);
      const GnsRepresentation rep = gns_construct(sc.algebra, sc.state, opts.tol);
      const GnsRepresentation pushed = gns_construct(sc.algebra, pushforward_state(sc.state, sc.automorphism), opts.tol);
      const Equivalence imp = is_implementable(rep, sc.automorphism, opts);
      row.implementable = imp.equivalent;
      row.implementer_residual = imp.equivalent ? imp.residual : std::numeric_limits<double>::infinity();
      row.gns_dims = std::make_pair(rep.hilbert_dim, pushed.hilbert_dim);
    } else {
      const CVector plus = product_x_state(n, false);
      const CVector minus = product_x_state(n, true);
      CVector moved(plus.size());
      const cplx phase = i_power(n);
      for (Index b = 0; b < plus.size(); ++b) {
        const bool odd = __builtin_popcountll(static_cast<unsigned long long>(b)) % 2 == 1;
        moved(b) = (odd ? -phase : phase) * plus(b);
      }
      const cplx overlap = minus.dot(moved);
      const cplx c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
      row.implementer_residual = max_abs(CMatrix(moved - c * minus));
      row.implementable = row.implementer_residual <= kCertificateTol;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wigrep
