#pragma once

#include <stdexcept>
#include <string>

namespace qf2 {

enum class ErrorKind {
  DivisionByZero,
  ZeroInput,
  NegativeValuation,
  FieldMismatch,
  ZeroScalar,
  ArfNontrivial,
  SingularInput,
  UndecidableInstance,
  WildSymbol,
  UndecidableClass,
  DimensionTooSmall,
  NotNormalized,
  SearchExhausted,
  HypothesisViolated,
  HypothesisFailed,
  LinkageHypothesisFailed,
  OracleFailure,
  UnsupportedField,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI's
/// exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qf2
