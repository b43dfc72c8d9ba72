#include "pabs/projectors.hpp"

#include "pabs/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pabs {

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

RealVector sorted_desc(std::vector<double> v, std::size_t length) {
  v.resize(length, 0.0);
  std::sort(v.begin(), v.end(), std::greater<>());
  return Eigen::Map<RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double max_abs_diff(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

ProjectorMatrix orthogonal_projector(const Subspace& s) {
  return {s.basis() * s.basis().adjoint()};
}

ObliqueProjector oblique_projector(const Subspace& x, const Subspace& y,
                                   const Tolerance& tol) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw Error(ErrorClass::DimMismatch, "oblique_projector: ambient dimensions differ");
  }
  const Matrix px = orthogonal_projector(x).matrix;
  const Matrix py = orthogonal_projector(y).matrix;
  return {pinv(px * py, tol)};
}

ResidualMap oblique_contract_residuals(const Subspace& x, const Subspace& y,
                                       const ObliqueProjector& w) {
  const Matrix px = orthogonal_projector(x).matrix;
  const Matrix py = orthogonal_projector(y).matrix;
  const Matrix& W = w.matrix;
  return {
      {"idempotent", (W * W - W).norm()},
      {"py_w", (py * W - W).norm()},
      {"w_px", (W * px - W).norm()},
  };
}

ResidualMap lemma44_residuals(const Subspace& x, const Subspace& y,
                              const Tolerance& tol) {
  const AngleSpectrum spec = cos_pabs(x, y, tol);
  if (spec.right_angle_count != 0) {
    throw Error(ErrorClass::ThetaLtHalfPi,
                "lemma44_residuals: requires every principal angle < pi/2 (" +
                    std::to_string(spec.right_angle_count) +
                    " angle(s) classified as pi/2)");
  }
  const Subspace xp = x.complement(tol);
  const Subspace yp = y.complement(tol);
  const Matrix px = orthogonal_projector(x).matrix;
  const Matrix py = orthogonal_projector(y).matrix;
  const Matrix pxp = orthogonal_projector(xp).matrix;
  const Matrix pyp = orthogonal_projector(yp).matrix;
  const Matrix w = pinv(px * py, tol);
  const Matrix wp = pinv(pxp * pyp, tol);

  ResidualMap out;
  if (x.dim() <= y.dim()) {
    out["px_pinv"] = (px * w - px).norm();
    out["pxperp_pinv"] = (pxp * w - (w - px)).norm();
    out["perp_pinv_py"] = (wp * py - (wp - pyp)).norm();
  }
  if (x.dim() >= y.dim()) {
    out["pinv_py"] = (w * py - py).norm();
    out["pinv_pyperp"] = (w * pyp - (w - py)).norm();
    out["px_perp_pinv"] = (px * wp - (wp - pxp)).norm();
  }
  return out;
}

double CsdReport::max_residual() const {
  double m = unitarity_residual;
  for (const auto& b : blocks) m = std::max(m, b.residual);
  return m;
}

CsdReport csd_structure_check(const Subspace& x, const Subspace& y,
                              const Tolerance& tol) {
  const AngleSpectrum spec = cos_pabs(x, y, tol);
  const long n = static_cast<long>(x.ambient_dim());
  const long p = static_cast<long>(x.dim());
  const long q = static_cast<long>(y.dim());

  CsdReport report;
  report.dims = halmos_dims(spec, n, p, q);
  const HalmosDims& d = report.dims;

  std::vector<double> cosines, sines;
  for (std::size_t k = spec.zero_count; k < spec.zero_count + spec.open_count(); ++k) {
    cosines.push_back(std::cos(spec.angles[k]));
    sines.push_back(std::sin(spec.angles[k]));
  }
  auto with = [](std::vector<double> base, long ones) {
    base.insert(base.end(), static_cast<std::size_t>(ones), 1.0);
    return base;
  };

  const Subspace xp = x.complement(tol);
  const Subspace yp = y.complement(tol);
  const Matrix& X = x.basis();
  const Matrix& Y = y.basis();
  const Matrix& Xp = xp.basis();
  const Matrix& Yp = yp.basis();

  struct Spec {
    const char* name;
    Matrix block;
    std::vector<double> expected;
  };
  const Spec specs[] = {
      {"XhY", X.adjoint() * Y, with(cosines, d.r)},
      {"XperphY", Xp.adjoint() * Y, with(sines, d.m10)},
      {"XhYperp", X.adjoint() * Yp, with(sines, d.m01)},
      {"XperphYperp", Xp.adjoint() * Yp, with(cosines, d.m11)},
  };
  for (const auto& s : specs) {
    CsdBlock b;
    b.name = s.name;
    b.singular = singular_values(s.block);
    b.expected = sorted_desc(s.expected, static_cast<std::size_t>(
                                             std::min(s.block.rows(), s.block.cols())));
    b.residual = max_abs_diff(b.singular, b.expected);
    report.blocks.push_back(std::move(b));
  }

  Matrix left(n, n), right(n, n);
  left << X, Xp;
  right << Y, Yp;
  const Matrix D = left.adjoint() * right;
  report.unitarity_residual = (D.adjoint() * D - identity(n)).norm();
  return report;
}

}  // namespace pabs
