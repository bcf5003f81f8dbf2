#pragma once

#include <Eigen/Dense>
#include <complex>

#include "jacobi/errors.hpp"

namespace jacobi {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Singularity is declared when an LU pivot falls below this fraction of the
// largest entry of the input matrix.
inline constexpr double kSingularPivotTol = 1e-13;
// Entrywise Hermiticity tolerance, relative to the matrix magnitude.
inline constexpr double kHermitianTol = 1e-10;
// A Hermitian matrix counts as positive when min eig > kPositiveFloor * max eig.
inline constexpr double kPositiveFloor = 1e-12;
// Inverses with a larger condition estimate than this are refused.
inline constexpr double kConditionLimit = 1e10;

inline CMat identity(Eigen::Index q) { return CMat::Identity(q, q); }

/// Checked matrix product; throws DimensionError on an inner-dimension mismatch.
CMat mat_mul(const CMat& a, const CMat& b);

/// Conjugate transpose.
inline CMat adjoint(const CMat& a) { return a.adjoint(); }

struct InverseDet {
  CMat inverse;
  Complex det;
};

/// Inverse and determinant via LU with partial pivoting.
/// Throws SingularMatrixError when a pivot is negligible relative to the input scale.
InverseDet lu_inverse_det(const CMat& a);

/// Inverse only (same LU path and singularity rule).
CMat inverse(const CMat& a);

/// Determinant only (same LU path; does not throw on singular input, det is then ~0).
Complex determinant(const CMat& a);

/// Unique positive square root of a Hermitian positive definite matrix.
/// Throws NotHermitianError / NotPositiveError.
CMat hermitian_sqrt(const CMat& w);

/// Operator norm (largest singular value).
double op_norm(const CMat& a);

/// op_norm(A) * op_norm(A^-1); +inf when A is singular.
double cond_estimate(const CMat& a);

bool is_hermitian(const CMat& a, double tol = kHermitianTol);

/// z^n for integer n by binary exponentiation (deterministic, exact conjugation symmetry).
Complex zpow(Complex z, long long n);

}  // namespace jacobi
