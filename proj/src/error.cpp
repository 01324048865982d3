#include "funcord/error.hpp"

namespace funcord {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Construction: return "Construction";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::NotDominated: return "NotDominated";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::ToleranceConflict: return "ToleranceConflict";
    case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorKind::NotMatrixAlgebra: return "NotMatrixAlgebra";
    case ErrorKind::NotCommutativeAlgebra: return "NotCommutativeAlgebra";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_mathematical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Construction:
    case ErrorKind::SizeMismatch:
    case ErrorKind::AlgebraMismatch:
      return false;
    default:
      return true;
  }
}

}  // namespace funcord
