#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "wigrep/wigner.hpp"

using namespace wigrep;

namespace {

CMatrix diag2(cplx a, cplx b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CMatrix sigma(char p) {
  CMatrix m = CMatrix::Zero(2, 2);
  if (p == 'x') m(0, 1) = m(1, 0) = 1.0;
  if (p == 'z') m = diag2(1.0, -1.0);
  return m;
}

AlgebraPtr c2() { return make_algebra(2, {diag2(1.0, 0.0), diag2(0.0, 1.0)}); }

struct Setup {
  AlgebraPtr alg;
  State omega;
  Automorphism alpha;
  GnsRepresentation src, tgt;
};

Setup setup(AlgebraPtr alg, State omega, Automorphism alpha) {
  GnsRepresentation src = gns_construct(alg, omega);
  GnsRepresentation tgt = gns_construct(alg, pushforward_state(omega, alpha));
  return {std::move(alg), std::move(omega), std::move(alpha), std::move(src), std::move(tgt)};
}

Setup two_point() {
  const AlgebraPtr c = c2();
  return setup(c, state_from_density(*c, diag2(1.0, 0.0)), spatial_automorphism(*c, sigma('x')));
}

Setup sigma_z_pure() {
  const AlgebraPtr m2 = pauli_algebra(1);
  CVector plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  return setup(m2, vector_state(*m2, plus), inner_automorphism(*m2, AlgebraElement{m2->coords(sigma('z'))}));
}

std::vector<std::pair<CVector, CVector>> sample_pairs(Index dim, int count, std::uint64_t seed) {
  const auto xs = sample_unit_vectors(dim, 2 * count, seed);
  std::vector<std::pair<CVector, CVector>> out;
  for (int k = 0; k < count; ++k) out.emplace_back(xs[2 * k], xs[2 * k + 1]);
  return out;
}

}  // namespace

TEST_CASE("W is the identity for the identity automorphism") {
  const AlgebraPtr m2 = pauli_algebra(1);
  State trace{CVector::Zero(4)};
  trace.values(0) = 1.0;
  for (const State& omega : {vector_state(*m2, CVector::Unit(2, 0)), trace}) {
    const GnsRepresentation rep = gns_construct(m2, omega);
    const WignerUnitary w = wigner_unitary(*m2, omega, Automorphism::identity(*m2), rep, rep);
    CHECK(w.passed());
    CHECK(max_abs(CMatrix(w.matrix - CMatrix::Identity(rep.hilbert_dim, rep.hilbert_dim))) <= 1e-10);
  }
}

TEST_CASE("two-point swap: W exists although the representations are inequivalent") {
  const Setup s = two_point();
  const WignerUnitary w = wigner_unitary(*s.alg, s.omega, s.alpha, s.src, s.tgt);
  CHECK(w.passed());
  REQUIRE(w.matrix.rows() == 1);
  CHECK(std::abs(w.matrix(0, 0) - cplx(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(w.matrix(0, 0) * s.src.cyclic_vector(0) - s.tgt.cyclic_vector(0)) <= 1e-12);
  const Equivalence eq = is_unitarily_equivalent(s.src, s.tgt);
  CHECK_FALSE(eq.equivalent);
  CHECK(eq.report.space_dim == 0);

  // W does not intertwine pi with pi'; pi(P) = 1 and pi'(P) = 0 for P = diag(1, 0)
  const SecondCorollary sc = check_second_corollary(w.matrix, s.src, s.tgt, s.alpha, sample_unit_vectors(1, 4, 1));
  CHECK_FALSE(sc.intertwines);
  CHECK(sc.intertwining_residual >= 1.0 - 1e-12);
  const CVector p = s.alg->coords(diag2(1.0, 0.0));
  CHECK(std::abs(rep_of(s.src, p)(0, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(rep_of(s.tgt, p)(0, 0)) <= 1e-12);
  CHECK(sc.checks.checks().empty());
}

TEST_CASE("same-space construction gives W = I") {
  std::mt19937_64 rng(41);
  const AlgebraPtr algs[] = {pauli_algebra(1), pauli_algebra(2), full_matrix_algebra(3)};
  for (const AlgebraPtr& alg : algs) {
    const Index d = alg->ambient_dim();
    for (int t = 0; t < 3; ++t) {
      const State omega = state_from_density(*alg, oracle::random_density(d, 1 + t % d, rng));
      const Automorphism alpha = inner_automorphism(*alg, AlgebraElement{alg->coords(random_unitary(d, rng))});
      const GnsRepresentation rep = gns_construct(alg, omega);
      const GnsRepresentation moved = compose_rep(rep, alpha);
      const WignerUnitary w = wigner_unitary(*alg, omega, alpha, rep, moved);
      CHECK(w.passed());
      CHECK(max_abs(CMatrix(w.matrix - CMatrix::Identity(rep.hilbert_dim, rep.hilbert_dim))) <= 1e-9);
    }
  }
  const Setup s = two_point();
  const WignerUnitary w = wigner_unitary(*s.alg, s.omega, s.alpha, s.src, compose_rep(s.src, s.alpha));
  CHECK(max_abs(CMatrix(w.matrix - CMatrix::Identity(1, 1))) <= 1e-12);
}

TEST_CASE("W certificates on random inner automorphisms") {
  std::mt19937_64 rng(42);
  const AlgebraPtr p2 = pauli_algebra(2);
  for (int t = 0; t < 10; ++t) {
    const State omega = state_from_density(*p2, oracle::random_density(4, 1 + t % 4, rng));
    const Automorphism alpha = inner_automorphism(*p2, AlgebraElement{p2->coords(random_unitary(4, rng))});
    const Setup s = setup(p2, omega, alpha);
    const WignerUnitary w = wigner_unitary(*p2, omega, alpha, s.src, s.tgt);
    CHECK(w.passed());
    CHECK(w.certificates.max_residual() <= 1e-9);
    // defining formula checked independently: W pi(A) Omega = pi'(alpha(A)) Omega'
    for (Index i = 0; i < p2->size(); ++i) {
      const CVector lhs = w.matrix * s.src.rep[i] * s.src.cyclic_vector;
      const CVector rhs = rep_of(s.tgt, apply(alpha, AlgebraElement{CVector::Unit(p2->size(), i)}).coeffs) *
                          s.tgt.cyclic_vector;
      CHECK(max_abs(CMatrix(lhs - rhs)) <= 1e-9);
    }
    CHECK(set_level_residual(w.matrix, s.src, s.tgt) <= 1e-9);
  }
}

TEST_CASE("W does not depend on the enumeration of the spanning set") {
  std::mt19937_64 rng(43);
  const AlgebraPtr p2 = pauli_algebra(2);
  const State omega = state_from_density(*p2, oracle::random_density(4, 3, rng));
  const Automorphism alpha = inner_automorphism(*p2, AlgebraElement{p2->coords(random_unitary(4, rng))});
  const Setup s = setup(p2, omega, alpha);
  std::vector<Index> order(static_cast<std::size_t>(p2->size()));
  std::iota(order.rbegin(), order.rend(), Index{0});
  const WignerUnitary forward = wigner_unitary(*p2, omega, alpha, s.src, s.tgt);
  const WignerUnitary backward = wigner_unitary(*p2, omega, alpha, s.src, s.tgt, {}, order);
  CHECK(max_abs(CMatrix(forward.matrix - backward.matrix)) <= 1e-10);
  std::shuffle(order.begin(), order.end(), rng);
  CHECK(max_abs(CMatrix(forward.matrix - wigner_unitary(*p2, omega, alpha, s.src, s.tgt, {}, order).matrix)) <= 1e-10);
}

TEST_CASE("state action") {
  const Setup z = sigma_z_pure();
  const WignerUnitary w = wigner_unitary(*z.alg, z.omega, z.alpha, z.src, z.tgt);
  CHECK(verify_state_action(w.matrix, z.src, z.tgt, z.alpha, {z.src.cyclic_vector}).passed());
  const auto xs = sample_unit_vectors(2, 100, 5);
  CHECK(verify_state_action(w.matrix, z.src, z.tgt, z.alpha, xs).passed());
  // independent: <W x, pi'(E_i) W x> against <x, pi(alpha^{-1}(E_i)) x> in ambient terms
  const Automorphism inv = inverse(z.alpha);
  for (const auto& x : xs)
    for (Index i = 0; i < 4; ++i) {
      const CVector y = w.matrix * x;
      const cplx lhs = y.dot(z.tgt.rep[i] * y);
      const cplx rhs = x.dot(rep_of(z.src, apply(inv, AlgebraElement{CVector::Unit(4, i)}).coeffs) * x);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }

  const Setup s = two_point();
  const WignerUnitary w1 = wigner_unitary(*s.alg, s.omega, s.alpha, s.src, s.tgt);
  CVector phase(1);
  phase(0) = std::polar(1.0, -1.3);
  CHECK(verify_state_action(w1.matrix, s.src, s.tgt, s.alpha, {phase}).passed());
  const State at_x = vector_to_state(s.tgt, w1.matrix * phase);
  CHECK(max_abs(CMatrix(at_x.values - state_from_density(*s.alg, diag2(0.0, 1.0)).values)) <= 1e-12);
}

TEST_CASE("transition probabilities") {
  const Setup z = sigma_z_pure();
  const WignerUnitary w = wigner_unitary(*z.alg, z.omega, z.alpha, z.src, z.tgt);
  const CVector e0 = CVector::Unit(2, 0), e1 = CVector::Unit(2, 1);
  CHECK(verify_transition_probabilities(w.matrix, {{e0, e0}}).passed());
  CHECK(std::abs((w.matrix * e0).dot(w.matrix * e1)) <= 1e-12);
  CHECK(verify_transition_probabilities(w.matrix, sample_pairs(2, 100, 6)).passed());
  // a non-unitary map fails
  CMatrix squash = CMatrix::Identity(2, 2);
  squash(1, 1) = 0.5;
  CHECK_FALSE(verify_transition_probabilities(squash, sample_pairs(2, 10, 7)).passed());
}

TEST_CASE("second corollary") {
  const AlgebraPtr m2 = pauli_algebra(1);
  const State omega = vector_state(*m2, CVector::Unit(2, 0));
  const GnsRepresentation rep = gns_construct(m2, omega);
  const Automorphism id = Automorphism::identity(*m2);
  const WignerUnitary wi = wigner_unitary(*m2, omega, id, rep, rep);
  const SecondCorollary trivial = check_second_corollary(wi.matrix, rep, rep, id, sample_unit_vectors(2, 8, 1));
  CHECK(trivial.intertwines);
  CHECK(trivial.checks.passed());

  // unbroken sigma_z: W is a unitary, V a different one, and W does not intertwine pi with pi'
  const Setup z = sigma_z_pure();
  const WignerUnitary w = wigner_unitary(*z.alg, z.omega, z.alpha, z.src, z.tgt);
  const Equivalence v = is_unitarily_equivalent(z.src, z.tgt);
  REQUIRE(v.equivalent);
  CHECK(phase_aligned_distance(w.matrix, *v.witness) > 1e-3);
  const SecondCorollary sc = check_second_corollary(w.matrix, z.src, z.tgt, z.alpha, sample_unit_vectors(2, 8, 2));
  CHECK_FALSE(sc.intertwines);

  // same-space: W = I intertwines pi with pi o alpha^{-1} only when the rep is fixed by the symmetry
  const GnsRepresentation moved = compose_rep(z.src, z.alpha);
  const WignerUnitary ws = wigner_unitary(*z.alg, z.omega, z.alpha, z.src, moved);
  const SecondCorollary same = check_second_corollary(ws.matrix, z.src, moved, z.alpha, sample_unit_vectors(2, 8, 3));
  CHECK_FALSE(same.intertwines);
  const GnsRepresentation moved_id = compose_rep(rep, id);
  const SecondCorollary same_id = check_second_corollary(wi.matrix, rep, moved_id, id, sample_unit_vectors(2, 8, 4));
  CHECK(same_id.intertwines);
  CHECK(same_id.checks.passed());
  CHECK(max_abs(CMatrix(wi.matrix - CMatrix::Identity(2, 2))) <= 1e-9);
}

TEST_CASE("contrast of W and V") {
  const Setup z = sigma_z_pure();
  const Contrast c = contrast_W_and_V(z.src, z.alpha);
  CHECK(c.certificates.passed());
  CHECK(max_abs(CMatrix(c.w - CMatrix::Identity(2, 2))) <= 1e-9);
  CHECK(phase_aligned_distance(c.v, rep_of(z.src, z.alg->coords(sigma('z')))) <= 1e-9);
  CHECK(c.certificates.find("V.state_action") != nullptr);
  CHECK(c.certificates.find("W.state_action") != nullptr);

  const AlgebraPtr m2 = pauli_algebra(1);
  const Contrast idc = contrast_W_and_V(z.src, Automorphism::identity(*m2));
  CHECK(max_abs(CMatrix(idc.w - CMatrix::Identity(2, 2))) <= 1e-9);
  CHECK(max_abs(CMatrix(idc.v - CMatrix::Identity(2, 2))) <= 1e-9);

  const Setup s = two_point();
  try {
    contrast_W_and_V(s.src, s.alpha);
    FAIL("expected NotImplementable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotImplementable);
  }
}

TEST_CASE("wigner_unitary input errors") {
  const Setup s = two_point();
  auto code_of = [&](const GnsRepresentation& src, const GnsRepresentation& tgt) {
    try {
      wigner_unitary(*s.alg, s.omega, s.alpha, src, tgt);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::NotGns;
  };
  CHECK(code_of(s.tgt, s.tgt) == ErrorCode::NotGns);
  CHECK(code_of(s.src, s.src) == ErrorCode::InconsistentState);
  CHECK(code_of(s.src, direct_sum(s.tgt, s.tgt)) == ErrorCode::NotGns);

  const AlgebraPtr m2 = pauli_algebra(1);
  State trace{CVector::Zero(4)};
  trace.values(0) = 1.0;
  const GnsRepresentation rep = gns_construct(m2, trace);
  GnsRepresentation bent = rep;
  bent.rep[1] = rep.rep[2];
  try {
    wigner_unitary(*m2, trace, Automorphism::identity(*m2), rep, bent);
    FAIL("expected NotGns");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotGns);
  }
}
