#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riordan {

enum class ErrorCode {
  OrderMismatch,
  ZeroConstantTerm,
  NonzeroConstantTerm,
  ValuationTooHigh,
  DivisionByZero,
  NotUnitConstant,
  NotInvertible,
  G0Zero,
  F0Nonzero,
  F1Zero,
  MatrixTooLarge,
  NotInvolution,
  ScalarArray,
  Degenerate,
  NotMember,
  NoNonscalarInvolutions,
  InvalidWitness,
  InvalidArgument,
  FieldMismatch,
};

std::string_view to_string(ErrorCode code);

// Raised for every violated precondition in the mathematical layers. The code
// names the constraint; the message carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace riordan
