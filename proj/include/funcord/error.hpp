#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace funcord {

enum class ErrorKind {
  Construction,
  AlgebraMismatch,
  SizeMismatch,
  NotRepresentable,
  VerificationFailed,
  NoConvergence,
  InvalidDecomposition,
  NotDominated,
  OrderViolation,
  ToleranceConflict,
  CrossCheckFailed,
  NotMatrixAlgebra,
  NotCommutativeAlgebra,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Errors that are properties of the inputs rather than of the program
/// (non-representable functionals, failed convergence, ...) map to exit
/// code 2 in the CLI; parse failures map to 1.
bool is_mathematical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace funcord
