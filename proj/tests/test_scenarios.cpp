#include <doctest.h>

#include "oracles.hpp"
#include "wigrep/scenarios.hpp"
#include "wigrep/wigner.hpp"

using namespace wigrep;

namespace {

CMatrix diag2(cplx a, cplx b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CVector plus_minus(double sign) {
  CVector v(2);
  v << 1.0, sign;
  return v / std::sqrt(2.0);
}

CVector product(const CVector& site, int n) {
  CVector v = CVector::Ones(1);
  for (int k = 0; k < n; ++k) v = kron(v, site);
  return v;
}

// <+x|P|-x> per site, multiplied out; identity sites contribute <+x|-x> = 0
cplx factorized_cross(int n, int k, char probe) {
  CMatrix p = CMatrix::Zero(2, 2);
  if (probe == 'x') p(0, 1) = p(1, 0) = 1.0;
  if (probe == 'y') {
    p(0, 1) = cplx(0.0, -1.0);
    p(1, 0) = cplx(0.0, 1.0);
  }
  if (probe == 'z') p = diag2(1.0, -1.0);
  const cplx with_p = plus_minus(1.0).dot(p * plus_minus(-1.0));
  const cplx without = plus_minus(1.0).dot(plus_minus(-1.0));
  cplx out = 1.0;
  for (int s = 0; s < n; ++s) out *= s < k ? with_p : without;
  return out;
}

}  // namespace

TEST_CASE("catalog scenarios validate and match their expected verdicts") {
  for (const std::string& name : scenario_names()) {
    const std::optional<Scenario> sc = find_scenario(name);
    REQUIRE(sc.has_value());
    CHECK(sc->name == name);
    const MatrixAlgebra& alg = *sc->algebra;
    CHECK(check_state(alg, sc->state).passed());
    CHECK(validate_automorphism(alg, sc->automorphism.matrix(), sc->automorphism.inverse_matrix()).passed());
    const GnsRepresentation src = gns_construct(sc->algebra, sc->state);
    const GnsRepresentation tgt = gns_construct(sc->algebra, pushforward_state(sc->state, sc->automorphism));
    const WignerUnitary w = wigner_unitary(alg, sc->state, sc->automorphism, src, tgt);
    CHECK(w.passed());
    CHECK(is_implementable(src, sc->automorphism).equivalent == !sc->expected_broken);
    CHECK_FALSE(sc->notes.empty());
  }
  CHECK_FALSE(find_scenario("no_such_thing").has_value());
}

TEST_CASE("two_point_swap") {
  const Scenario sc = scenario_two_point_swap();
  CHECK(sc.expected_broken);
  CHECK(sc.algebra->size() == 2);
  const GnsRepresentation rep = gns_construct(sc.algebra, sc.state);
  CHECK(rep.hilbert_dim == 1);
  CHECK_FALSE(is_implementable(rep, sc.automorphism).equivalent);
  const State pushed = pushforward_state(sc.state, sc.automorphism);
  CHECK(max_abs(CMatrix(pushed.values - state_from_density(*sc.algebra, diag2(0.0, 1.0)).values)) <= 1e-12);
  const WignerUnitary w = wigner_unitary(*sc.algebra, sc.state, sc.automorphism, rep, gns_construct(sc.algebra, pushed));
  CHECK(std::abs(w.matrix(0, 0) - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("block_swap") {
  const Scenario sc = scenario_block_swap();
  CHECK(sc.expected_broken);
  CHECK(sc.algebra->size() == 8);
  const State pushed = pushforward_state(sc.state, sc.automorphism);
  const GnsRepresentation src = gns_construct(sc.algebra, sc.state);
  const GnsRepresentation tgt = gns_construct(sc.algebra, pushed);
  CHECK(src.hilbert_dim == 2);
  CHECK(tgt.hilbert_dim == 2);
  CHECK(oracle::gram_rank(*sc.algebra, sc.state) == 2);
  CHECK(intertwiner_space(src, tgt).space_dim == 0);
  CHECK(oracle::intertwiner_dim(src, tgt) == 0);
  const WignerUnitary w = wigner_unitary(*sc.algebra, sc.state, sc.automorphism, src, tgt);
  CHECK(w.passed());
  CHECK(w.matrix.rows() == 2);
}

TEST_CASE("elementary_qm") {
  CMatrix sz = diag2(1.0, -1.0);
  const Scenario sc = scenario_elementary_qm(2, sz);
  CHECK_FALSE(sc.expected_broken);
  const GnsRepresentation rep = gns_construct(sc.algebra, sc.state);
  CHECK(is_implementable(rep, sc.automorphism).equivalent);
  const Contrast c = contrast_W_and_V(rep, sc.automorphism);
  CHECK(c.certificates.passed());
  CHECK(max_abs(CMatrix(c.w - CMatrix::Identity(2, 2))) <= 1e-9);
  CHECK(phase_aligned_distance(c.v, rep_of(rep, sc.algebra->coords(sz))) <= 1e-9);

  const Scenario trivial = scenario_elementary_qm(2, CMatrix::Identity(2, 2));
  const GnsRepresentation rt = gns_construct(trivial.algebra, trivial.state);
  const Contrast ct = contrast_W_and_V(rt, trivial.automorphism);
  CHECK(max_abs(CMatrix(ct.w - CMatrix::Identity(2, 2))) <= 1e-9);
  CHECK(max_abs(CMatrix(ct.v - CMatrix::Identity(2, 2))) <= 1e-9);

  try {
    scenario_elementary_qm(2, diag2(1.0, 2.0));
    FAIL("expected NotUnitary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitary);
  }
  CHECK_THROWS_AS(scenario_elementary_qm(2, sz, CVector(CVector::Ones(2))), Error);
}

TEST_CASE("ferromagnet") {
  const Scenario one = scenario_ferromagnet(1);
  CHECK_FALSE(one.expected_broken);
  const State pushed = pushforward_state(one.state, one.automorphism);
  CHECK(max_abs(CMatrix(pushed.values - vector_state(*one.algebra, plus_minus(-1.0)).values)) <= 1e-10);
  const GnsRepresentation a = gns_construct(one.algebra, one.state);
  const GnsRepresentation b = gns_construct(one.algebra, pushed);
  CHECK(a.hilbert_dim == 2);
  CHECK(b.hilbert_dim == 2);
  CHECK(is_unitarily_equivalent(a, b).equivalent);

  const Scenario two = scenario_ferromagnet(2);
  REQUIRE(two.implementer.has_value());
  CMatrix isz = diag2(cplx(0.0, 1.0), cplx(0.0, -1.0));
  CHECK(phase_aligned_distance(*two.implementer, kron(isz, isz)) <= 1e-12);
  const GnsRepresentation rep = gns_construct(two.algebra, two.state);
  const Equivalence eq = is_implementable(rep, two.automorphism);
  CHECK(eq.equivalent);
  CHECK(eq.residual <= 1e-9);

  for (int n = 1; n <= 4; ++n) {
    const Scenario sc = scenario_ferromagnet(n);
    const State p = pushforward_state(sc.state, sc.automorphism);
    const State minus = state_from_density(*sc.algebra, CMatrix(product(plus_minus(-1.0), n) * product(plus_minus(-1.0), n).adjoint()));
    CHECK(max_abs(CMatrix(p.values - minus.values)) <= 1e-10);
  }
  try {
    scenario_ferromagnet(7);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("cross-sector elements against the site factorization") {
  CHECK(std::abs(cross_sector_element(2, 1, 'z')) <= 1e-15);
  CHECK(std::abs(cross_sector_element(1, 0, 'z')) <= 1e-15);
  for (int n = 1; n <= 8; ++n) CHECK(std::abs(cross_sector_element(n, n, 'z') - cplx(1.0, 0.0)) <= 1e-12);
  for (char probe : {'x', 'y', 'z'})
    for (int n = 1; n <= 7; ++n)
      for (int k = 0; k <= n; ++k)
        CHECK(std::abs(cross_sector_element(n, k, probe) - factorized_cross(n, k, probe)) <= 1e-12);
  // direct vector arithmetic for a small case
  const CVector psi_p = product(plus_minus(1.0), 3), psi_m = product(plus_minus(-1.0), 3);
  const CMatrix op = kron(kron(diag2(1.0, -1.0), diag2(1.0, -1.0)), CMatrix::Identity(2, 2));
  CHECK(std::abs(cross_sector_element(3, 2, 'z') - psi_p.dot(op * psi_m)) <= 1e-14);
}

TEST_CASE("chain sweep") {
  const std::vector<ChainSweepRow> rows = chain_sweep(8, 1, 'z');
  REQUIRE(rows.size() == 8);
  for (const ChainSweepRow& r : rows) {
    CHECK(r.implementable);
    CHECK(r.implementer_residual <= 1e-9);
    CHECK(r.implementer_residual >= 0.0);
    CHECK(r.k == std::min(1, r.n));
    if (r.k < r.n) CHECK(std::abs(r.cross_sector) <= 1e-12);
    CHECK(r.gns_dims.has_value() == (r.n <= 6));
    if (r.gns_dims) {
      CHECK(r.gns_dims->first == (Index{1} << r.n));
      CHECK(r.gns_dims->second == (Index{1} << r.n));
    }
  }
  CHECK(std::abs(rows[0].cross_sector - cplx(1.0, 0.0)) <= 1e-12);

  const std::vector<ChainSweepRow> wide = chain_sweep(4, 3, 'x');
  for (const ChainSweepRow& r : wide) CHECK(std::abs(r.cross_sector - factorized_cross(r.n, r.k, 'x')) <= 1e-12);

  try {
    chain_sweep(21);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}
