#pragma once

#include "pabs/angles.hpp"
#include "pabs/generator.hpp"
#include "pabs/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace pabs::test {

inline constexpr double kPi = std::numbers::pi;

inline Matrix real_matrix(Eigen::Index rows, Eigen::Index cols, std::initializer_list<double> col_major) {
  Matrix m(rows, cols);
  auto it = col_major.begin();
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = *it++;
  }
  return m;
}

inline Matrix unit(Eigen::Index n, Eigen::Index k) {
  Matrix e = Matrix::Zero(n, 1);
  e(k, 0) = 1.0;
  return e;
}

// X = span(e1), Y = span([cos θ; sin θ]) in C^2.
inline Matrix planar_y(double theta) {
  return real_matrix(2, 1, {std::cos(theta), std::sin(theta)});
}

// The 3x2 pair used to show that the rank guard is necessary.
inline Matrix guard_y() { return real_matrix(3, 2, {1, 0, 0, 1, 1, 0}); }

// m x n with prescribed singular values between Haar unitaries.
inline Matrix with_singular_values(Eigen::Index m, Eigen::Index n, const std::vector<double>& s,
                                   std::mt19937_64& rng) {
  Matrix sigma = Matrix::Zero(m, n);
  for (std::size_t k = 0; k < s.size(); ++k) {
    sigma(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = s[k];
  }
  return haar_unitary(m, rng) * sigma * haar_unitary(n, rng).adjoint();
}

// Random m x n of random rank with nonzero singular values in [0.1, 10].
inline Matrix random_matrix(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng) {
  const Eigen::Index k = std::min(m, n);
  const auto rank = std::uniform_int_distribution<Eigen::Index>(0, k)(rng);
  std::uniform_real_distribution<double> dist(std::log(0.1), std::log(10.0));
  std::vector<double> s;
  for (Eigen::Index i = 0; i < rank; ++i) s.push_back(std::exp(dist(rng)));
  return with_singular_values(m, n, s, rng);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline GeneratorSpec spec(long n, long p, long q, long r, std::vector<double> angles,
                          std::uint64_t seed = 7) {
  GeneratorSpec s;
  s.n = n;
  s.p = p;
  s.q = q;
  s.r = r;
  s.angles_open = std::move(angles);
  s.seed = seed;
  return s;
}

}  // namespace pabs::test
