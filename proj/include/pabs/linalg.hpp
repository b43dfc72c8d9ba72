#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>

namespace pabs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Thresholds used wherever a floating-point value has to be turned into an
// integer decision (rank, multiplicity of 0 or pi/2).
struct Tolerance {
  // Relative rank cut against sigma_max. Unset means max(rows, cols) * eps of
  // the matrix being truncated.
  std::optional<double> rank_rel;
  // Absolute floor under the relative cut. Inputs here are unit scale
  // (orthonormal bases, projectors), so rounding noise sits near 1e-15.
  double rank_abs = 1e-12;
  double orth = 1e-10;
  double angle_class = 1e-8;

  // Throws InvalidSpec unless every set field lies in (0, 1).
  void validate() const;

  // Singular values of `a` above this value count toward its rank.
  double rank_threshold(const Matrix& a, double sigma_max) const;
};

struct SvdResult {
  Matrix left;           // m x m unitary
  RealVector singular;   // min(m, n) values, descending
  Matrix right;          // n x n unitary
};

// Full SVD. The largest-magnitude entry of every left singular vector is made
// real positive, and the matching right vector receives the same phase.
SvdResult svd(const Matrix& a);

RealVector singular_values(const Matrix& a);

Matrix pinv(const Matrix& a, const Tolerance& tol = {});

Eigen::Index numerical_rank(const Matrix& a, const Tolerance& tol = {});

// Orthonormal basis for range(a); the column count equals numerical_rank(a).
Matrix orthonormal_basis(const Matrix& a, const Tolerance& tol = {});

// Q_perp with [Q Q_perp] unitary. Q must already have orthonormal columns.
Matrix orthonormal_complement(const Matrix& q, const Tolerance& tol = {});

// ||Q^H Q - I||_F
double orthonormality_residual(const Matrix& q);

bool is_finite(const Matrix& a);

// Hermitian transpose.
inline Matrix herm(const Matrix& a) { return a.adjoint(); }

}  // namespace pabs
