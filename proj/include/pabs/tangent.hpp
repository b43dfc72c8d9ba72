#pragma once

#include "pabs/angles.hpp"
#include "pabs/projectors.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pabs {

// Every explicit construction of a matrix T whose positive singular values
// are the finite nonzero tangents of the principal angles between X and Y.
//
// B1..B8  basis forms (X⊥ and Y⊥ are orthonormal complements)
//   B1 X⊥ᴴY (XᴴY)⁺        B5 YᴴX⊥ (Y⊥ᴴX⊥)⁺
//   B2 (YᴴX)⁺ YᴴX⊥        B6 (XᴴY)⁺ XᴴY⊥
//   B3 Y⊥ᴴX (YᴴX)⁺        B7 (Y⊥ᴴX⊥)⁺ Y⊥ᴴX
//   B4 XᴴY⊥ (X⊥ᴴY⊥)⁺      B8 (X⊥ᴴY⊥)⁺ X⊥ᴴY
// P1..P8  the same with the outer basis factor replaced by a projector
//   P1 P_X⊥ Y (XᴴY)⁺      P5 P_Y X⊥ (Y⊥ᴴX⊥)⁺
//   P2 (YᴴX)⁺ Yᴴ P_X⊥     P6 (XᴴY)⁺ Xᴴ P_Y⊥
//   P3 P_Y⊥ X (YᴴX)⁺      P7 (Y⊥ᴴX⊥)⁺ Y⊥ᴴ P_X
//   P4 P_X Y⊥ (X⊥ᴴY⊥)⁺    P8 (X⊥ᴴY⊥)⁺ X⊥ᴴ P_Y
// T41, T41a, T41b  P_X⊥ (P_X P_Y)⁺, P_Y⊥ (P_Y P_X)⁺, P_X (P_X⊥ P_Y⊥)⁺
// C1..C4  (P_Y − P_X)(P_X P_Y)⁺, (P_Y⊥ − P_X⊥)(P_X⊥ P_Y⊥)⁺,
//         (P_X − P_Y)(P_Y P_X)⁺, P_X P_Y⊥ (P_X⊥ P_Y⊥)⁺
// D1..D4  (P_X P_Y)⁺ − P_X, (P_X⊥ P_Y⊥)⁺ − P_Y⊥    [dim X <= dim Y]
//         (P_X P_Y)⁺ − P_Y, (P_X⊥ P_Y⊥)⁺ − P_X⊥    [dim X >= dim Y]
//         D-forms additionally need every angle < pi/2.
enum class FormulaId {
  B1, B2, B3, B4, B5, B6, B7, B8,
  P1, P2, P3, P4, P5, P6, P7, P8,
  T41, T41a, T41b,
  C1, C2, C3, C4,
  D1, D2, D3, D4,
};

std::span<const FormulaId> all_formulas();
std::string_view formula_name(FormulaId f);
std::optional<FormulaId> parse_formula(std::string_view name);

// B1, B2, P1, P2: valid for a non-orthonormal Y under the rank condition.
bool accepts_rank_condition(FormulaId f);
// T41*, C*, D*: depend on range(Y) only.
bool is_projector_form(FormulaId f);
bool needs_acute_angles(FormulaId f);
// D1, D2 need dim X <= dim Y; D3, D4 need dim X >= dim Y.
bool dim_order_ok(FormulaId f, Eigen::Index p, Eigen::Index q);

enum class RankCase { CaseI, CaseII, Violated };

std::string_view rank_case_name(RankCase c);

// CaseI: Y has orthonormal columns. CaseII: rank(Y) = rank(XᴴY) <= p.
RankCase check_rank_condition(const Subspace& x, const Matrix& y_raw,
                              const Tolerance& tol = {});

// Builds T for `formula`. Errors: RankCondition (non-orthonormal Y with
// rank(Y) != rank(XᴴY), or with a formula that needs orthonormal Y),
// ThetaLtHalfPi / DimOrder for D-forms outside their hypotheses.
Matrix build_T(const Subspace& x, const Matrix& y_raw, FormulaId formula,
               const Tolerance& tol = {});

// tan Θ = [∞ × infinite_count, finite ascending, 0 × zero_count]
struct TangentSpectrum {
  std::size_t infinite_count = 0;
  std::vector<double> finite;
  std::size_t zero_count = 0;

  std::size_t size() const { return infinite_count + finite.size() + zero_count; }
};

// Positive singular values of T; a value counts as positive above
// tol.rank_threshold(T, max(sigma_max, 1)). Throws CountMismatch when the
// multiplicities implied by `dims` do not add up to pq_min.
TangentSpectrum tangent_spectrum(const Matrix& t, const HalmosDims& dims,
                                 std::size_t pq_min, const Tolerance& tol = {});

AngleSpectrum angles_from_tangents(const TangentSpectrum& ts);

struct ZConstruction {
  Matrix z;  // X + X⊥ T, n x p
  Matrix t;  // X⊥ᴴY (XᴴY)⁺
};

// Requires XᴴY to have full column rank.
ZConstruction build_Z(const Subspace& x, const Matrix& y_raw,
                      const Tolerance& tol = {});

// XᴴZ = I, ZᴴZ = I + TᴴT, range(Y) ⊆ range(Z) and
// S(XᴴZ (ZᴴZ)^{-1/2}) = (1 + S(T)^2)^{-1/2}.
ResidualMap z_identity_residuals(const Subspace& x, const Matrix& y_raw,
                                 const ZConstruction& zc);

// Tangents from the triangular factor of [X Y] = [Q Q⊥] [R11 R12; 0 R22]:
// S₊(R22 R12⁺). Requires q <= p and X, Y, XᴴY of full rank.
TangentSpectrum qr_tangent(const Matrix& x_raw, const Matrix& y_raw,
                           const Tolerance& tol = {});

}  // namespace pabs
