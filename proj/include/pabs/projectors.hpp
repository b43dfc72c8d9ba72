#pragma once

#include "pabs/angles.hpp"

#include <map>
#include <string>

namespace pabs {

// Residual name -> Frobenius norm. Ordered so serialised reports are stable.
using ResidualMap = std::map<std::string, double>;

struct ProjectorMatrix {
  Matrix matrix;  // n x n, Hermitian and idempotent
};

// W = (P_X P_Y)^+, the idempotent onto Y along X⊥.
struct ObliqueProjector {
  Matrix matrix;
};

ProjectorMatrix orthogonal_projector(const Subspace& s);

ObliqueProjector oblique_projector(const Subspace& x, const Subspace& y,
                                   const Tolerance& tol = {});

// ||W^2 - W||, ||P_Y W - W||, ||W P_X - W||.
ResidualMap oblique_contract_residuals(const Subspace& x, const Subspace& y,
                                       const ObliqueProjector& w);

// Residuals of the simplifications that hold once no principal angle equals
// pi/2. Which entries are present depends on dim X versus dim Y:
//   p <= q: px_pinv           P_X W - P_X
//           pxperp_pinv       P_X⊥ W - (W - P_X)
//           perp_pinv_py      W⊥ P_Y - (W⊥ - P_Y⊥)
//   p >= q: pinv_py           W P_Y - P_Y
//           pinv_pyperp       W P_Y⊥ - (W - P_Y)
//           px_perp_pinv      P_X W⊥ - (W⊥ - P_X⊥)
// with W = (P_X P_Y)^+ and W⊥ = (P_X⊥ P_Y⊥)^+.
// Throws ThetaLtHalfPi when some angle is classified as pi/2.
ResidualMap lemma44_residuals(const Subspace& x, const Subspace& y,
                              const Tolerance& tol = {});

struct CsdBlock {
  std::string name;        // "XhY", "XperphY", "XhYperp", "XperphYperp"
  RealVector singular;     // computed, descending
  RealVector expected;     // from the block structure, descending
  double residual = 0.0;   // max |computed - expected|
};

struct CsdReport {
  HalmosDims dims;
  std::vector<CsdBlock> blocks;
  double unitarity_residual = 0.0;  // ||D^H D - I|| for D = [X X⊥]^H [Y Y⊥]
  double max_residual() const;
};

// Checks the singular values of the four blocks of [X X⊥]^H [Y Y⊥] against
// the identity/cosine/sine/zero pattern implied by the pair's angles.
CsdReport csd_structure_check(const Subspace& x, const Subspace& y,
                              const Tolerance& tol = {});

}  // namespace pabs
