#include "pabs/error.hpp"

namespace pabs {

std::string_view error_class_name(ErrorClass c) noexcept {
  switch (c) {
    case ErrorClass::DimMismatch: return "DIM_MISMATCH";
    case ErrorClass::EmptySubspace: return "EMPTY_SUBSPACE";
    case ErrorClass::NotOrthonormal: return "NOT_ORTHONORMAL";
    case ErrorClass::NonFinite: return "NON_FINITE";
    case ErrorClass::SvdFailure: return "SVD_FAILURE";
    case ErrorClass::RankCondition: return "RANK_CONDITION";
    case ErrorClass::ThetaLtHalfPi: return "THETA_LT_HALFPI";
    case ErrorClass::DimOrder: return "DIM_ORDER";
    case ErrorClass::CountMismatch: return "COUNT_MISMATCH";
    case ErrorClass::InconsistentClassification:
      return "INCONSISTENT_CLASSIFICATION";
    case ErrorClass::InvalidSpec: return "INVALID_SPEC";
  }
  return "UNKNOWN";
}

bool is_precondition(ErrorClass c) noexcept {
  switch (c) {
    case ErrorClass::InvalidSpec:
    case ErrorClass::NonFinite:
      return false;
    default:
      return true;
  }
}

}  // namespace pabs
