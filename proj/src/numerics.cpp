#include "wigrep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <lapacke.h>

namespace wigrep {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotGns: return "NotGns";
    case ErrorCode::InconsistentState: return "InconsistentState";
    case ErrorCode::NotImplementable: return "NotImplementable";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  if (!(abs > 0.0) || !(rel > 0.0) || !std::isfinite(abs) || !std::isfinite(rel))
    throw std::invalid_argument("tolerances must be finite and strictly positive");
}

double max_abs(const CMatrix& m) {
  // abs2 avoids a hypot per entry
  return m.size() == 0 ? 0.0 : std::sqrt(m.cwiseAbs2().maxCoeff());
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

double hermiticity_residual(const CMatrix& m) {
  return max_abs(m - m.adjoint());
}

double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

HermitianEig hermitian_eig(const CMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "hermitian_eig needs a square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");
  const double herm = hermiticity_residual(m);
  if (herm > tol.abs)
    throw Error(ErrorCode::NotHermitian, "||m - m^H||_max = " + std::to_string(herm));
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  HermitianEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

namespace {

// Singular values and right singular vectors, reduced through QR for tall input.
struct RightSvd {
  RVector sigma;  // descending, length = cols (zeros padded)
  CMatrix v;      // cols x cols
};

// LAPACK zgesdd on a copy of m; JacobiSVD only if it reports a convergence failure.
RightSvd lapack_svd(CMatrix a, bool want_v) {
  const auto rows = static_cast<lapack_int>(a.rows());
  const auto cols = static_cast<lapack_int>(a.cols());
  RightSvd out;
  RVector sigma(std::min(a.rows(), a.cols()));
  CMatrix u, vt;
  if (want_v) {
    u.resize(rows, rows);
    vt.resize(cols, cols);
  }
  auto z = [](CMatrix& m) { return reinterpret_cast<lapack_complex_double*>(m.data()); };
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, want_v ? 'A' : 'N', rows, cols, z(a), std::max<lapack_int>(1, rows),
                     sigma.data(), want_v ? z(u) : nullptr, std::max<lapack_int>(1, rows), want_v ? z(vt) : nullptr,
                     std::max<lapack_int>(1, cols));
  if (info != 0) {
    Eigen::JacobiSVD<CMatrix> svd(a, want_v ? Eigen::ComputeFullV : 0);
    out.sigma = svd.singularValues();
    if (want_v) out.v = svd.matrixV();
    return out;
  }
  out.sigma = sigma;
  if (want_v) out.v = vt.adjoint();
  return out;
}

RightSvd right_svd(const CMatrix& m) {
  const Index cols = m.cols();
  RightSvd out;
  out.sigma = RVector::Zero(cols);
  if (cols == 0) {
    out.v = CMatrix(0, 0);
    return out;
  }
  if (m.rows() > cols) {
    Eigen::HouseholderQR<CMatrix> qr(m);
    const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    return lapack_svd(r, true);
  }
  const RightSvd svd = lapack_svd(m, true);
  out.sigma.head(svd.sigma.size()) = svd.sigma;
  out.v = svd.v;
  return out;
}

}  // namespace

CMatrix null_space(const CMatrix& m, const Tolerance& tol) {
  if (m.cols() == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(m.cols(), m.cols());
  const RightSvd svd = right_svd(m);
  const double smax = svd.sigma.maxCoeff();
  const double cutoff = tol.rel * smax;
  Index rank = 0;
  if (smax > 0.0) {
    while (rank < svd.sigma.size() && svd.sigma(rank) > cutoff) ++rank;
  }
  return svd.v.rightCols(m.cols() - rank);
}

Index numerical_rank(const CMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  const RVector sigma = lapack_svd(m, false).sigma;
  const double smax = sigma.maxCoeff();
  if (!(smax > 0.0)) return 0;
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol.rel * smax) ++rank;
  return rank;
}

CMatrix polar_unitary(const CMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "polar_unitary needs a non-empty square matrix");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > tol.abs) || !(smin > tol.rel * s(0)))
    throw Error(ErrorCode::Singular, "smallest singular value " + std::to_string(smin));
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

bool mostly_zero(const CMatrix& m) {
  if (m.size() < 1024) return false;
  Index nnz = 0;
  const cplx* p = m.data();
  for (Index k = 0; k < m.size(); ++k) nnz += (p[k] != cplx(0.0, 0.0));
  return nnz * 8 < m.size();
}

}  // namespace

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  if (mostly_zero(a)) {
    const SparseCMatrix sa = a.sparseView();
    return sa * b;
  }
  if (mostly_zero(b)) {
    const SparseCMatrix sb = b.sparseView();
    return a * sb;
  }
  return a * b;
}

CMatrix fix_phase(const CMatrix& m) {
  if (m.size() == 0) return m;
  const double peak = max_abs(m);
  if (peak == 0.0) return m;
  const cplx* p = m.data();
  for (Index k = 0; k < m.size(); ++k) {
    if (std::abs(p[k]) >= peak * (1.0 - 1e-9)) {
      const cplx phase = std::conj(p[k]) / std::abs(p[k]);
      return m * phase;
    }
  }
  return m;
}

double phase_aligned_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
  return max_abs(a - phase * b);
}

}  // namespace wigrep
