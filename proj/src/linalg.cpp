#include "pabs/linalg.hpp"

#include "pabs/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pabs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const Matrix& a, const char* where) {
  if (!is_finite(a)) {
    throw Error(ErrorClass::NonFinite,
                std::string(where) + ": matrix has non-finite entries");
  }
}

// Index of the largest-magnitude entry; near-ties resolve to the first index
// so that rounding noise cannot flip the choice.
Eigen::Index dominant_entry(const Eigen::Ref<const Eigen::VectorXcd>& v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best * (1.0 - 1e-12)) return i;
  }
  return 0;
}

}  // namespace

void Tolerance::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw Error(ErrorClass::InvalidSpec,
                  std::string("tolerance ") + name + " must lie in (0, 1)");
    }
  };
  if (rank_rel) check(*rank_rel, "rank_rel");
  check(rank_abs, "rank_abs");
  check(orth, "orth");
  check(angle_class, "angle_class");
}

double Tolerance::rank_threshold(const Matrix& a, double sigma_max) const {
  const double rel = rank_rel.value_or(
      static_cast<double>(std::max(a.rows(), a.cols())) * kEps);
  return std::max(rel * sigma_max, rank_abs);
}

bool is_finite(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m == 0 || n == 0) {
    return {Matrix::Identity(m, m), RealVector(0), Matrix::Identity(n, n)};
  }

  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorClass::SvdFailure, "svd: iteration did not converge");
  }

  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  const Eigen::Index k = out.singular.size();
  for (Eigen::Index c = 0; c < m; ++c) {
    const Complex lead = out.left(dominant_entry(out.left.col(c)), c);
    const double mag = std::abs(lead);
    if (mag == 0.0) continue;
    const Complex phase = std::conj(lead) / mag;
    out.left.col(c) *= phase;
    if (c < k) out.right.col(c) *= phase;
  }
  return out;
}

RealVector singular_values(const Matrix& a) {
  require_finite(a, "singular_values");
  if (a.size() == 0) return RealVector(0);
  Eigen::JacobiSVD<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorClass::SvdFailure, "svd: iteration did not converge");
  }
  return solver.singularValues();
}

Matrix pinv(const Matrix& a, const Tolerance& tol) {
  const SvdResult f = svd(a);
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  if (f.singular.size() == 0) return out;
  const double cut = tol.rank_threshold(a, f.singular(0));
  for (Eigen::Index k = 0; k < f.singular.size(); ++k) {
    if (f.singular(k) <= cut) break;
    out.noalias() += (f.right.col(k) / f.singular(k)) * f.left.col(k).adjoint();
  }
  return out;
}

Eigen::Index numerical_rank(const Matrix& a, const Tolerance& tol) {
  const RealVector s = singular_values(a);
  if (s.size() == 0) return 0;
  const double cut = tol.rank_threshold(a, s(0));
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return rank;
}

Matrix orthonormal_basis(const Matrix& a, const Tolerance& tol) {
  const SvdResult f = svd(a);
  Eigen::Index rank = 0;
  if (f.singular.size() > 0) {
    const double cut = tol.rank_threshold(a, f.singular(0));
    while (rank < f.singular.size() && f.singular(rank) > cut) ++rank;
  }
  if (rank == 0) {
    throw Error(ErrorClass::EmptySubspace,
                "orthonormal_basis: input has numerical rank 0");
  }
  return f.left.leftCols(rank);
}

double orthonormality_residual(const Matrix& q) {
  if (q.cols() == 0) return 0.0;
  return (q.adjoint() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

Matrix orthonormal_complement(const Matrix& q, const Tolerance& tol) {
  if (q.cols() > q.rows()) {
    throw Error(ErrorClass::NotOrthonormal,
                "orthonormal_complement: more columns than rows");
  }
  const double res = orthonormality_residual(q);
  if (!(res <= tol.orth)) {
    throw Error(ErrorClass::NotOrthonormal,
                "orthonormal_complement: input columns are not orthonormal "
                "(residual " + std::to_string(res) + ")");
  }
  if (q.cols() == 0) return Matrix::Identity(q.rows(), q.rows());
  const SvdResult f = svd(q);
  return f.left.rightCols(q.rows() - q.cols());
}

}  // namespace pabs
