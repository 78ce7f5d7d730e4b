#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace wigrep {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using SparseCMatrix = Eigen::SparseMatrix<cplx>;
using Index = Eigen::Index;

/// Residual threshold used by every certificate check in the library.
inline constexpr double kCertificateTol = 1e-9;

enum class ErrorCode {
  NotHermitian,
  Singular,
  DimensionMismatch,
  ClosureOverflow,
  NotUnitary,
  NotInAlgebra,
  InvalidState,
  InvalidAutomorphism,
  InvalidAlgebra,
  NotUnit,
  CapExceeded,
  NotGns,
  InconsistentState,
  NotImplementable,
  AlgebraMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;

  /// Throws std::invalid_argument unless both fields are strictly positive.
  void validate() const;
};

struct HermitianEig {
  RVector values;   // descending
  CMatrix vectors;  // column k belongs to values[k]
};

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
HermitianEig hermitian_eig(const CMatrix& m, const Tolerance& tol = {});

/// Orthonormal basis of {v : m v ~ 0}. A singular value counts as zero when it is
/// at most tol.rel times the largest one; an all-zero matrix has full nullity.
CMatrix null_space(const CMatrix& m, const Tolerance& tol = {});

/// Number of singular values above tol.rel * sigma_max.
Index numerical_rank(const CMatrix& m, const Tolerance& tol = {});

/// Unitary factor U of the polar decomposition m = U P.
CMatrix polar_unitary(const CMatrix& m, const Tolerance& tol = {});

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// a * b, routed through a sparse product when either side is mostly zeros.
CMatrix multiply(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);
double unitarity_residual(const CMatrix& u);
double hermiticity_residual(const CMatrix& m);

/// Rescales by a unit phase so that the first entry (column-major) of largest
/// modulus is real and positive.
CMatrix fix_phase(const CMatrix& m);

/// min over theta of ||a - e^{i theta} b||_max, with theta taken from the
/// Hilbert-Schmidt overlap of b with a.
double phase_aligned_distance(const CMatrix& a, const CMatrix& b);

/// Uniformly distributed (Haar) unitary of size n.
template <class Rng>
CMatrix random_unitary(Index n, Rng& rng);

/// Gaussian complex vector normalized to unit length.
template <class Rng>
CVector random_unit_vector(Index n, Rng& rng);

}  // namespace wigrep

#include "wigrep/detail/random.hpp"
