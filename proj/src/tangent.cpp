#include "pabs/tangent.hpp"

#include "pabs/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace pabs {

namespace {

constexpr std::array kFormulas = {
    FormulaId::B1,  FormulaId::B2,   FormulaId::B3,   FormulaId::B4,
    FormulaId::B5,  FormulaId::B6,   FormulaId::B7,   FormulaId::B8,
    FormulaId::P1,  FormulaId::P2,   FormulaId::P3,   FormulaId::P4,
    FormulaId::P5,  FormulaId::P6,   FormulaId::P7,   FormulaId::P8,
    FormulaId::T41, FormulaId::T41a, FormulaId::T41b, FormulaId::C1,
    FormulaId::C2,  FormulaId::C3,   FormulaId::C4,   FormulaId::D1,
    FormulaId::D2,  FormulaId::D3,   FormulaId::D4,
};

constexpr std::array<std::string_view, kFormulas.size()> kNames = {
    "B1",  "B2",   "B3",   "B4", "B5", "B6", "B7", "B8", "P1",
    "P2",  "P3",   "P4",   "P5", "P6", "P7", "P8", "T41", "T41a",
    "T41b", "C1",  "C2",   "C3", "C4", "D1", "D2", "D3", "D4",
};

// Everything a formula may reference, computed once per call.
struct Pieces {
  Matrix X, Xp, Y, Yp;
  Matrix PX, PXp, PY, PYp;
};

Pieces basis_pieces(const Subspace& x, const Matrix& y, bool y_orthonormal,
                    const Tolerance& tol) {
  Pieces k;
  k.X = x.basis();
  k.Xp = orthonormal_complement(k.X, tol);
  k.Y = y;
  k.PX = k.X * k.X.adjoint();
  k.PXp = k.Xp * k.Xp.adjoint();
  if (y_orthonormal) {
    k.Yp = orthonormal_complement(k.Y, tol);
    k.PY = k.Y * k.Y.adjoint();
    k.PYp = k.Yp * k.Yp.adjoint();
  }
  return k;
}

Matrix evaluate(FormulaId f, const Pieces& k, const Tolerance& tol) {
  auto pi = [&](const Matrix& a) { return pinv(a, tol); };
  const auto& [X, Xp, Y, Yp, PX, PXp, PY, PYp] = k;
  switch (f) {
    case FormulaId::B1: return Xp.adjoint() * Y * pi(X.adjoint() * Y);
    case FormulaId::B2: return pi(Y.adjoint() * X) * Y.adjoint() * Xp;
    case FormulaId::B3: return Yp.adjoint() * X * pi(Y.adjoint() * X);
    case FormulaId::B4: return X.adjoint() * Yp * pi(Xp.adjoint() * Yp);
    case FormulaId::B5: return Y.adjoint() * Xp * pi(Yp.adjoint() * Xp);
    case FormulaId::B6: return pi(X.adjoint() * Y) * X.adjoint() * Yp;
    case FormulaId::B7: return pi(Yp.adjoint() * Xp) * Yp.adjoint() * X;
    case FormulaId::B8: return pi(Xp.adjoint() * Yp) * Xp.adjoint() * Y;
    case FormulaId::P1: return PXp * Y * pi(X.adjoint() * Y);
    case FormulaId::P2: return pi(Y.adjoint() * X) * Y.adjoint() * PXp;
    case FormulaId::P3: return PYp * X * pi(Y.adjoint() * X);
    case FormulaId::P4: return PX * Yp * pi(Xp.adjoint() * Yp);
    case FormulaId::P5: return PY * Xp * pi(Yp.adjoint() * Xp);
    case FormulaId::P6: return pi(X.adjoint() * Y) * X.adjoint() * PYp;
    case FormulaId::P7: return pi(Yp.adjoint() * Xp) * Yp.adjoint() * PX;
    case FormulaId::P8: return pi(Xp.adjoint() * Yp) * Xp.adjoint() * PY;
    case FormulaId::T41: return PXp * pi(PX * PY);
    case FormulaId::T41a: return PYp * pi(PY * PX);
    case FormulaId::T41b: return PX * pi(PXp * PYp);
    case FormulaId::C1: return (PY - PX) * pi(PX * PY);
    case FormulaId::C2: return (PYp - PXp) * pi(PXp * PYp);
    case FormulaId::C3: return (PX - PY) * pi(PY * PX);
    case FormulaId::C4: return PX * PYp * pi(PXp * PYp);
    case FormulaId::D1: return pi(PX * PY) - PX;
    case FormulaId::D2: return pi(PXp * PYp) - PYp;
    case FormulaId::D3: return pi(PX * PY) - PY;
    case FormulaId::D4: return pi(PXp * PYp) - PXp;
  }
  throw Error(ErrorClass::InvalidSpec, "unknown formula");
}

void require_same_rows(const Subspace& x, const Matrix& y, const char* where) {
  if (x.ambient_dim() != y.rows()) {
    throw Error(ErrorClass::DimMismatch,
                std::string(where) + ": X and Y live in different ambient spaces");
  }
}

}  // namespace

std::span<const FormulaId> all_formulas() { return kFormulas; }

std::string_view formula_name(FormulaId f) {
  return kNames[static_cast<std::size_t>(f)];
}

std::optional<FormulaId> parse_formula(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kFormulas[i];
  }
  return std::nullopt;
}

bool accepts_rank_condition(FormulaId f) {
  return f == FormulaId::B1 || f == FormulaId::B2 || f == FormulaId::P1 ||
         f == FormulaId::P2;
}

bool is_projector_form(FormulaId f) {
  return static_cast<int>(f) >= static_cast<int>(FormulaId::T41);
}

bool needs_acute_angles(FormulaId f) {
  return static_cast<int>(f) >= static_cast<int>(FormulaId::D1);
}

bool dim_order_ok(FormulaId f, Eigen::Index p, Eigen::Index q) {
  switch (f) {
    case FormulaId::D1:
    case FormulaId::D2: return p <= q;
    case FormulaId::D3:
    case FormulaId::D4: return p >= q;
    default: return true;
  }
}

std::string_view rank_case_name(RankCase c) {
  switch (c) {
    case RankCase::CaseI: return "case_i";
    case RankCase::CaseII: return "case_ii";
    case RankCase::Violated: return "violated";
  }
  return "?";
}

RankCase check_rank_condition(const Subspace& x, const Matrix& y_raw,
                              const Tolerance& tol) {
  require_same_rows(x, y_raw, "check_rank_condition");
  if (y_raw.cols() <= y_raw.rows() && orthonormality_residual(y_raw) <= tol.orth) {
    return RankCase::CaseI;
  }
  const Eigen::Index rank_y = numerical_rank(y_raw, tol);
  const Eigen::Index rank_xy = numerical_rank(x.basis().adjoint() * y_raw, tol);
  if (rank_y == rank_xy && rank_xy <= x.dim()) return RankCase::CaseII;
  return RankCase::Violated;
}

Matrix build_T(const Subspace& x, const Matrix& y_raw, FormulaId formula,
               const Tolerance& tol) {
  require_same_rows(x, y_raw, "build_T");

  if (is_projector_form(formula)) {
    const Subspace y = Subspace::from_span(y_raw, tol);
    if (needs_acute_angles(formula)) {
      if (!dim_order_ok(formula, x.dim(), y.dim())) {
        throw Error(ErrorClass::DimOrder,
                    std::string(formula_name(formula)) +
                        ": dimension ordering of X and Y does not fit this form (p=" +
                        std::to_string(x.dim()) + ", q=" + std::to_string(y.dim()) + ")");
      }
      const AngleSpectrum spec = cos_pabs(x, y, tol);
      if (spec.right_angle_count != 0) {
        throw Error(ErrorClass::ThetaLtHalfPi,
                    std::string(formula_name(formula)) +
                        ": requires every principal angle < pi/2");
      }
    }
    return evaluate(formula, basis_pieces(x, y.basis(), true, tol), tol);
  }

  const RankCase rc = check_rank_condition(x, y_raw, tol);
  if (rc == RankCase::Violated) {
    throw Error(ErrorClass::RankCondition,
                std::string(formula_name(formula)) +
                    ": Y is not orthonormal and rank(Y) != rank(X^H Y); the "
                    "tangent formula would return wrong values");
  }
  if (rc == RankCase::CaseII && !accepts_rank_condition(formula)) {
    throw Error(ErrorClass::NotOrthonormal,
                std::string(formula_name(formula)) +
                    ": this form needs an orthonormal basis for Y");
  }
  return evaluate(formula, basis_pieces(x, y_raw, rc == RankCase::CaseI, tol), tol);
}

TangentSpectrum tangent_spectrum(const Matrix& t, const HalmosDims& dims,
                                 std::size_t pq_min, const Tolerance& tol) {
  TangentSpectrum ts;
  ts.infinite_count = static_cast<std::size_t>(std::min(dims.m10, dims.m01));
  ts.zero_count = static_cast<std::size_t>(dims.r);

  const RealVector s = singular_values(t);
  if (s.size() > 0) {
    const double cut = tol.rank_threshold(t, std::max(s(0), 1.0));
    for (Eigen::Index k = 0; k < s.size() && s(k) > cut; ++k) {
      ts.finite.push_back(s(k));
    }
  }
  std::reverse(ts.finite.begin(), ts.finite.end());

  if (ts.size() != pq_min) {
    throw Error(ErrorClass::CountMismatch,
                "tangent_spectrum: " + std::to_string(ts.infinite_count) +
                    " infinite + " + std::to_string(ts.finite.size()) +
                    " positive + " + std::to_string(ts.zero_count) +
                    " zero tangents != min(p, q) = " + std::to_string(pq_min));
  }
  return ts;
}

AngleSpectrum angles_from_tangents(const TangentSpectrum& ts) {
  AngleSpectrum out;
  out.angles.assign(ts.zero_count, 0.0);
  for (double t : ts.finite) out.angles.push_back(std::atan(t));
  out.angles.insert(out.angles.end(), ts.infinite_count, std::numbers::pi / 2.0);
  out.zero_count = ts.zero_count;
  out.right_angle_count = ts.infinite_count;
  return out;
}

ZConstruction build_Z(const Subspace& x, const Matrix& y_raw,
                      const Tolerance& tol) {
  require_same_rows(x, y_raw, "build_Z");
  const Matrix xy = x.basis().adjoint() * y_raw;
  if (y_raw.cols() > x.dim() || numerical_rank(xy, tol) != y_raw.cols()) {
    throw Error(ErrorClass::RankCondition,
                "build_Z: X^H Y must have full column rank");
  }
  const Matrix xp = orthonormal_complement(x.basis(), tol);
  ZConstruction zc;
  zc.t = xp.adjoint() * y_raw * pinv(xy, tol);
  zc.z = x.basis() + xp * zc.t;
  return zc;
}

ResidualMap z_identity_residuals(const Subspace& x, const Matrix& y_raw,
                                 const ZConstruction& zc) {
  const Matrix& X = x.basis();
  const Matrix& Z = zc.z;
  const Matrix& T = zc.t;
  const Eigen::Index p = X.cols();
  const Matrix I = Matrix::Identity(p, p);
  const Matrix zhz = Z.adjoint() * Z;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(zhz);
  const Matrix inv_sqrt = eig.operatorInverseSqrt();
  const RealVector got = singular_values(X.adjoint() * Z * inv_sqrt);

  const RealVector st = singular_values(T);
  std::vector<double> want(static_cast<std::size_t>(p), 1.0);
  for (Eigen::Index k = 0; k < st.size() && k < p; ++k) {
    want[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(1.0 + st(k) * st(k));
  }
  std::sort(want.begin(), want.end(), std::greater<>());
  double sv_law = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    sv_law = std::max(sv_law, std::abs(got(k) - want[static_cast<std::size_t>(k)]));
  }

  return {
      {"xhz_identity", (X.adjoint() * Z - I).norm()},
      {"zhz_identity", (zhz - I - T.adjoint() * T).norm()},
      {"y_in_range_z", (y_raw - Z * (X.adjoint() * y_raw)).norm()},
      {"singular_value_law", sv_law},
  };
}

TangentSpectrum qr_tangent(const Matrix& x_raw, const Matrix& y_raw,
                           const Tolerance& tol) {
  if (x_raw.rows() != y_raw.rows()) {
    throw Error(ErrorClass::DimMismatch, "qr_tangent: X and Y have different row counts");
  }
  const Eigen::Index n = x_raw.rows();
  const Eigen::Index p = x_raw.cols();
  const Eigen::Index q = y_raw.cols();
  if (q > p) {
    throw Error(ErrorClass::DimOrder, "qr_tangent: requires dim Y <= dim X (q=" +
                                          std::to_string(q) + ", p=" +
                                          std::to_string(p) + ")");
  }
  if (p == 0 || q == 0) {
    throw Error(ErrorClass::EmptySubspace, "qr_tangent: empty basis");
  }
  if (numerical_rank(x_raw, tol) != p || numerical_rank(y_raw, tol) != q ||
      numerical_rank(x_raw.adjoint() * y_raw, tol) != q) {
    throw Error(ErrorClass::RankCondition,
                "qr_tangent: X, Y and X^H Y must all have full rank");
  }

  Matrix xy(n, p + q);
  xy << x_raw, y_raw;
  const Eigen::HouseholderQR<Matrix> qr(xy);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  const Matrix r12 = r.block(0, p, p, q);
  const Matrix r22 = r.block(p, p, n - p, q);
  const Matrix t = r22 * pinv(r12, tol);

  TangentSpectrum ts;
  const RealVector s = singular_values(t);
  if (s.size() > 0) {
    const double cut = tol.rank_threshold(t, std::max(s(0), 1.0));
    for (Eigen::Index k = 0; k < s.size() && s(k) > cut; ++k) {
      ts.finite.push_back(s(k));
    }
  }
  std::reverse(ts.finite.begin(), ts.finite.end());
  ts.zero_count = static_cast<std::size_t>(q) - ts.finite.size();
  return ts;
}

}  // namespace pabs
