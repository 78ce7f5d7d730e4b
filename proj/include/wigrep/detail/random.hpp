#pragma once

#include <random>

namespace wigrep {

namespace detail {

template <class Rng>
cplx gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace detail

template <class Rng>
CVector random_unit_vector(Index n, Rng& rng) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = detail::gaussian(rng);
  return v / v.norm();
}

template <class Rng>
CMatrix random_unitary(Index n, Rng& rng) {
  CMatrix z(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) z(i, j) = detail::gaussian(rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Mezzadri's correction: absorb the phases of diag(R) so Q is Haar distributed.
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace wigrep
