#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diagkit {

enum class ErrorCode {
  DivisionByZero,
  NegativeRadicand,
  UnsupportedField,
  EndpointRoot,
  FieldMismatch,
  NonSquare,
  SizeMismatch,
  NotCommuting,
  NotDiagonalizable,
  InputNotDiagonalizable,
  DependentInput,
  NotUnit,
  NotSymmetric,
  Singular,
  SingularConjugator,
  WrongDimension,
  PreconditionViolated,
  MissingCertificate,
  SingularP,
  SingularMap,
  DegreeOverflow,
  Parse,
  Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace diagkit
