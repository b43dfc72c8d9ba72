#include "pabs/angles.hpp"

#include "pabs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pabs {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_same_ambient(const Subspace& x, const Subspace& y,
                          const char* where) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw Error(ErrorClass::DimMismatch,
                std::string(where) + ": ambient dimensions differ (" +
                    std::to_string(x.ambient_dim()) + " vs " +
                    std::to_string(y.ambient_dim()) + ")");
  }
}

// Appends `count` copies of `value`.
void pad(std::vector<double>& v, long count, double value) {
  for (long i = 0; i < count; ++i) v.push_back(value);
}

}  // namespace

Subspace::Subspace(Matrix basis, const Tolerance& tol) : basis_(std::move(basis)) {
  if (!is_finite(basis_)) {
    throw Error(ErrorClass::NonFinite, "Subspace: basis has non-finite entries");
  }
  if (basis_.cols() > basis_.rows()) {
    throw Error(ErrorClass::NotOrthonormal,
                "Subspace: more basis vectors than ambient dimension");
  }
  const double res = orthonormality_residual(basis_);
  if (!(res <= tol.orth)) {
    throw Error(ErrorClass::NotOrthonormal,
                "Subspace: basis columns are not orthonormal (residual " +
                    std::to_string(res) + ")");
  }
}

Subspace Subspace::from_span(const Matrix& a, const Tolerance& tol) {
  return Subspace(orthonormal_basis(a, tol), tol);
}

Subspace Subspace::complement(const Tolerance& tol) const {
  return Subspace(orthonormal_complement(basis_, tol), tol);
}

std::vector<double> AngleSpectrum::descending() const {
  return {angles.rbegin(), angles.rend()};
}

std::string_view complement_pair_name(ComplementPair which) {
  switch (which) {
    case ComplementPair::PerpPerp: return "Xperp_Yperp";
    case ComplementPair::XYPerp: return "X_Yperp";
    case ComplementPair::XPerpY: return "Xperp_Y";
  }
  return "?";
}

AngleSpectrum spectrum_from_cosines(const RealVector& cosines,
                                    const Tolerance& tol) {
  std::vector<double> c(cosines.data(), cosines.data() + cosines.size());
  std::sort(c.begin(), c.end(), std::greater<>());

  AngleSpectrum out;
  out.angle_class = tol.angle_class;
  out.angles.reserve(c.size());
  for (double v : c) {
    v = std::clamp(v, 0.0, 1.0);
    if (v >= 1.0 - tol.angle_class) {
      ++out.zero_count;
      out.angles.push_back(0.0);
    } else if (v <= tol.angle_class) {
      ++out.right_angle_count;
      out.angles.push_back(kHalfPi);
    } else {
      out.angles.push_back(std::acos(v));
    }
  }
  return out;
}

AngleSpectrum cos_pabs(const Subspace& x, const Subspace& y,
                       const Tolerance& tol) {
  require_same_ambient(x, y, "cos_pabs");
  return spectrum_from_cosines(singular_values(x.basis().adjoint() * y.basis()),
                               tol);
}

PrincipalVectors principal_vectors(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y, "principal_vectors");
  const Eigen::Index m = std::min(x.dim(), y.dim());
  const SvdResult f = svd(x.basis().adjoint() * y.basis());
  return {x.basis() * f.left.leftCols(m), y.basis() * f.right.leftCols(m)};
}

HalmosDims halmos_dims(const AngleSpectrum& spec, long n, long p, long q) {
  HalmosDims d;
  d.r = static_cast<long>(spec.zero_count);
  d.s = static_cast<long>(spec.open_count());
  d.m01 = p - d.r - d.s;
  d.m10 = q - d.r - d.s;
  d.m11 = n - p - q + d.r;
  if (d.m01 < 0 || d.m10 < 0 || d.m11 < 0) {
    throw Error(ErrorClass::InconsistentClassification,
                "halmos_dims: negative intersection dimension (r=" +
                    std::to_string(d.r) + ", s=" + std::to_string(d.s) +
                    "); angle classification tolerance too loose");
  }
  return d;
}

HalmosDims halmos_dims(const Subspace& x, const Subspace& y,
                       const Tolerance& tol) {
  require_same_ambient(x, y, "halmos_dims");
  return halmos_dims(cos_pabs(x, y, tol), static_cast<long>(x.ambient_dim()),
                     static_cast<long>(x.dim()), static_cast<long>(y.dim()));
}

AngleSpectrum complement_spectrum(const AngleSpectrum& spec,
                                  const HalmosDims& dims, long n,
                                  ComplementPair which) {
  const long p = dims.p();
  const long q = dims.q();
  const std::vector<double> down = spec.descending();

  AngleSpectrum out;
  out.angle_class = spec.angle_class;

  switch (which) {
    case ComplementPair::PerpPerp: {
      // [Θ↓(X,Y), 0 × max(n-p-q,0)] = [Θ↓(X⊥,Y⊥), 0 × max(p+q-n,0)]
      std::vector<double> lhs = down;
      pad(lhs, std::max(n - p - q, 0L), 0.0);
      lhs.resize(static_cast<std::size_t>(std::min(n - p, n - q)));
      out.angles.assign(lhs.rbegin(), lhs.rend());
      out.zero_count = static_cast<std::size_t>(dims.m11);
      out.right_angle_count = static_cast<std::size_t>(std::min(dims.m01, dims.m10));
      break;
    }
    case ComplementPair::XYPerp: {
      // [π/2 × max(p-q,0), Θ↓(X,Y)] = [π/2 - Θ↑(X,Y⊥), 0 × max(p+q-n,0)]
      std::vector<double> lhs;
      pad(lhs, std::max(p - q, 0L), kHalfPi);
      lhs.insert(lhs.end(), down.begin(), down.end());
      lhs.resize(static_cast<std::size_t>(std::min(p, n - q)));
      for (double v : lhs) out.angles.push_back(kHalfPi - v);
      out.zero_count = static_cast<std::size_t>(dims.m01);
      out.right_angle_count = static_cast<std::size_t>(std::min(dims.m11, dims.r));
      break;
    }
    case ComplementPair::XPerpY: {
      // [Θ↓(X,Y⊥), 0 × max(q-p,0)] = [Θ↓(X⊥,Y), 0 × max(p-q,0)]
      const AngleSpectrum xyp =
          complement_spectrum(spec, dims, n, ComplementPair::XYPerp);
      std::vector<double> lhs = xyp.descending();
      pad(lhs, std::max(q - p, 0L), 0.0);
      lhs.resize(static_cast<std::size_t>(std::min(n - p, q)));
      out.angles.assign(lhs.rbegin(), lhs.rend());
      out.zero_count = static_cast<std::size_t>(dims.m10);
      out.right_angle_count = static_cast<std::size_t>(std::min(dims.r, dims.m11));
      break;
    }
  }
  return out;
}

}  // namespace pabs
