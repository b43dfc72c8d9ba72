#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pabs/error.hpp"
#include "pabs/linalg.hpp"
#include "support.hpp"

#include <limits>

using namespace pabs;
using namespace pabs::test;

namespace {

double penrose_max(const Matrix& a, const Matrix& ap) {
  return std::max({(a * ap * a - a).norm(), (ap * a * ap - ap).norm(),
                   ((a * ap).adjoint() - a * ap).norm(), ((ap * a).adjoint() - ap * a).norm()});
}

}  // namespace

TEST_CASE("svd of simple matrices") {
  CHECK((svd(Matrix::Identity(3, 3)).singular - RealVector::Ones(3)).norm() < 1e-15);
  CHECK(svd(Matrix::Zero(2, 2)).singular.norm() == 0.0);
  const SvdResult f = svd(planar_y(kPi / 3));
  REQUIRE(f.singular.size() == 1);
  CHECK(f.singular(0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("svd invariants and phase convention") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index m = 1 + trial % 7, n = 1 + (trial * 5) % 6;
    const Matrix a = gaussian_matrix(m, n, rng);
    const SvdResult f = svd(a);
    Matrix sigma = Matrix::Zero(m, n);
    for (Eigen::Index k = 0; k < f.singular.size(); ++k) sigma(k, k) = f.singular(k);
    CHECK((f.left * sigma * f.right.adjoint() - a).norm() <= 1e-13 * std::max(1.0, a.norm()));
    CHECK(orthonormality_residual(f.left) < 1e-13);
    CHECK(orthonormality_residual(f.right) < 1e-13);
    for (Eigen::Index k = 1; k < f.singular.size(); ++k) {
      CHECK(f.singular(k - 1) >= f.singular(k));
    }
    for (Eigen::Index c = 0; c < m; ++c) {
      Eigen::Index idx;
      f.left.col(c).cwiseAbs().maxCoeff(&idx);
      CHECK(std::abs(f.left(idx, c).imag()) < 1e-14);
      CHECK(f.left(idx, c).real() > 0.0);
    }
  }
}

TEST_CASE("svd rejects non-finite input") {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svd(a), Error);
}

TEST_CASE("empty matrices propagate") {
  const Matrix e(3, 0);
  CHECK(pinv(e).rows() == 0);
  CHECK(pinv(e).cols() == 3);
  CHECK(numerical_rank(e) == 0);
  CHECK(orthonormal_complement(e).cols() == 3);
  CHECK(orthonormal_complement(Matrix::Identity(4, 4)).cols() == 0);
}

TEST_CASE("pinv examples") {
  const Matrix row = real_matrix(1, 2, {1, 1});
  const Matrix rp = pinv(row);
  CHECK((rp - real_matrix(2, 1, {0.5, 0.5})).norm() < 1e-15);
  CHECK((pinv(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm() < 1e-15);
  const Matrix d = real_matrix(2, 2, {2, 0, 0, 0});
  CHECK((pinv(d) - real_matrix(2, 2, {0.5, 0, 0, 0})).norm() < 1e-15);
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(guard_y()) == 2);
  CHECK(numerical_rank(Matrix::Zero(3, 2)) == 0);
  std::mt19937_64 rng(3);
  const Matrix q = haar_unitary(5, rng).leftCols(3);
  CHECK(numerical_rank(q) == 3);
}

TEST_CASE("orthonormal basis") {
  const Matrix a = real_matrix(3, 2, {2, 0, 0, 0, 0, 3});
  const Matrix q = orthonormal_basis(a);
  CHECK(q.cols() == 2);
  CHECK(orthonormality_residual(q) < 1e-14);
  CHECK((q * q.adjoint() - real_matrix(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 1})).norm() < 1e-14);

  const Matrix y = guard_y();
  const Matrix qy = orthonormal_basis(y);
  CHECK(qy.cols() == 2);
  // Same range: projectors agree.
  CHECK((qy * qy.adjoint() - y * pinv(y)).norm() < 1e-14);

  Matrix dup(3, 2);
  dup << unit(3, 1), unit(3, 1);
  CHECK(orthonormal_basis(dup).cols() == 1);

  CHECK_THROWS_AS(orthonormal_basis(Matrix::Zero(3, 2)), Error);
}

TEST_CASE("orthonormal complement") {
  const Matrix c = orthonormal_complement(unit(2, 0));
  REQUIRE(c.cols() == 1);
  CHECK(std::abs(std::abs(c(1, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(c(0, 0)) < 1e-15);

  std::mt19937_64 rng(5);
  const Matrix q = haar_unitary(6, rng).leftCols(2);
  const Matrix qp = orthonormal_complement(q);
  CHECK(qp.cols() == 4);
  CHECK((q.adjoint() * qp).norm() < 1e-13);
  Matrix full(6, 6);
  full << q, qp;
  CHECK(orthonormality_residual(full) < 1e-13);

  CHECK_THROWS_AS(orthonormal_complement(guard_y()), Error);
}

TEST_CASE("tolerance validation") {
  Tolerance t;
  CHECK_NOTHROW(t.validate());
  t.angle_class = 0.0;
  CHECK_THROWS_AS(t.validate(), Error);
  t = Tolerance{};
  t.rank_rel = 1.5;
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("pseudoinverse laws on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 12);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 12);
    const Matrix a = random_matrix(m, n, rng);
    const Matrix ap = pinv(a);
    CHECK(penrose_max(a, ap) <= 1e-10);
    CHECK((pinv(ap) - a).norm() <= 1e-10);

    // A A^+ is the orthogonal projector onto range(A).
    const Matrix p = a * ap;
    CHECK((p * p - p).norm() <= 1e-10);
    CHECK((p * a - a).norm() <= 1e-10);

    const Matrix u = haar_unitary(m, rng);
    const Matrix v = haar_unitary(n, rng);
    CHECK((pinv(u * a * v.adjoint()) - v * ap * u.adjoint()).norm() <= 1e-10);
  }
}

TEST_CASE("full-rank product rule") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index k = 1 + trial % 4;
    const Eigen::Index m = k + static_cast<Eigen::Index>(rng() % 4);
    const Eigen::Index n = k + static_cast<Eigen::Index>(rng() % 4);
    std::vector<double> s(static_cast<std::size_t>(k));
    for (auto& v : s) v = 0.5 + static_cast<double>(rng() % 100) / 50.0;
    const Matrix a = with_singular_values(m, k, s, rng);  // full column rank
    const Matrix b = with_singular_values(k, n, s, rng);  // full row rank
    CHECK((pinv(a * b) - pinv(b) * pinv(a)).norm() <= 1e-10);
  }
}

TEST_CASE("block pseudoinverse rules") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index m = 1 + trial % 5, n = 1 + (trial * 3) % 5;
    const Eigen::Index extra_r = 1 + trial % 3, extra_c = 1 + (trial * 7) % 3;
    const Matrix a1 = random_matrix(m, n, rng);
    const Matrix a1p = pinv(a1);

    Matrix a(m, n + extra_c);
    a << a1, Matrix::Zero(m, extra_c);
    Matrix ap_blocks(n + extra_c, m);
    ap_blocks << a1p, Matrix::Zero(extra_c, m);
    CHECK((pinv(a) - ap_blocks).norm() <= 1e-10);

    Matrix b(m + extra_r, n);
    b << a1, Matrix::Zero(extra_r, n);
    Matrix bp_blocks(n, m + extra_r);
    bp_blocks << a1p, Matrix::Zero(n, extra_r);
    CHECK((pinv(b) - bp_blocks).norm() <= 1e-10);

    Matrix c = Matrix::Zero(m + extra_r, n + extra_c);
    c.topLeftCorner(m, n) = a1;
    Matrix cp_blocks = Matrix::Zero(n + extra_c, m + extra_r);
    cp_blocks.topLeftCorner(n, m) = a1p;
    CHECK((pinv(c) - cp_blocks).norm() <= 1e-10);
  }
}
