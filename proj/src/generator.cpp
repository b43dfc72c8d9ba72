#include "pabs/generator.hpp"

#include "pabs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pabs {

void GeneratorSpec::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorClass::InvalidSpec, "generator: " + msg);
  };
  if (n < 1) fail("n must be positive");
  if (p < 1 || p > n || q < 1 || q > n) fail("need 1 <= p, q <= n");
  if (r < 0) fail("r must be nonnegative");
  const long s = static_cast<long>(angles_open.size());
  if (r + s > std::min(p, q)) fail("r + |angles| exceeds min(p, q)");
  if (n < p + q - r) fail("n < p + q - r");
  for (double a : angles_open) {
    if (!(a > 0.0 && a < std::numbers::pi / 2.0)) {
      fail("angles must lie in the open interval (0, pi/2)");
    }
  }
}

HalmosDims GeneratorSpec::dims() const {
  const long s = static_cast<long>(angles_open.size());
  return {r, s, p - r - s, q - r - s, n - p - q + r};
}

std::vector<double> GeneratorSpec::prescribed_angles() const {
  std::vector<double> out(static_cast<std::size_t>(r), 0.0);
  std::vector<double> open = angles_open;
  std::sort(open.begin(), open.end());
  out.insert(out.end(), open.begin(), open.end());
  const long m = std::min(p, q);
  out.resize(static_cast<std::size_t>(m), std::numbers::pi / 2.0);
  return out;
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix csd_block_matrix(const GeneratorSpec& spec) {
  spec.validate();
  const HalmosDims d = spec.dims();
  const long n = spec.n;
  const long p = spec.p;
  const long q = spec.q;
  std::vector<double> open = spec.angles_open;
  std::sort(open.begin(), open.end());

  Matrix D = Matrix::Zero(n, n);
  // Row offsets: top (r, s, m01), bottom (m11, s, m10).
  const long row_c = d.r;
  const long row_i_top = d.r + d.s;
  const long row_neg_i = p;
  const long row_s = p + d.m11;
  const long row_i_bottom = p + d.m11 + d.s;
  // Column offsets: left (r, s, m10), right (m11, s, m01).
  const long col_c = d.r;
  const long col_i_left = d.r + d.s;
  const long col_neg_i = q;
  const long col_s = q + d.m11;
  const long col_i_right = q + d.m11 + d.s;

  for (long k = 0; k < d.r; ++k) D(k, k) = 1.0;
  for (long k = 0; k < d.s; ++k) {
    const double c = std::cos(open[static_cast<std::size_t>(k)]);
    const double s = std::sin(open[static_cast<std::size_t>(k)]);
    D(row_c + k, col_c + k) = c;
    D(row_c + k, col_s + k) = s;
    D(row_s + k, col_c + k) = s;
    D(row_s + k, col_s + k) = -c;
  }
  for (long k = 0; k < d.m01; ++k) D(row_i_top + k, col_i_right + k) = 1.0;
  for (long k = 0; k < d.m11; ++k) D(row_neg_i + k, col_neg_i + k) = -1.0;
  for (long k = 0; k < d.m10; ++k) D(row_i_bottom + k, col_i_left + k) = 1.0;
  return D;
}

GeneratedPair generate_pair(const GeneratorSpec& spec) {
  const Matrix D = csd_block_matrix(spec);
  std::mt19937_64 rng(spec.seed);
  const Matrix Q = haar_unitary(spec.n, rng);
  const Matrix QD = Q * D;
  return {Subspace(Q.leftCols(spec.p)), Subspace(QD.leftCols(spec.q)), D};
}

}  // namespace pabs
