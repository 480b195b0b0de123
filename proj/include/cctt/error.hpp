#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace cctt {

enum class ErrorClass {
  ParseError,
  UnboundVariable,
  DuplicateName,
  NotAFunction,
  NotAPair,
  NotALater,
  NotAForall,
  NotAPath,
  NotAType,
  CannotInfer,
  ClockMismatch,
  TickEscape,
  DiamondOutsideForcing,
  NotATick,
  NoCommonResidual,
  TypeMismatch,
  EndpointMismatch,
  IncompatibleOverlap,
  TubeMismatch,
  BaseBoundaryMismatch,
  TransNotConstant,
  NonProperEntry,
  IllTypedEntry,
  ForwardConstructorReference,
  BoundaryNotCovering,
  BoundaryIncompatible,
  PointConstructorBoundary,
  NotABoundaryTerm,
  UnknownConstructor,
  ArityMismatch,
  CaseMissing,
  CaseBoundaryMismatch,
  MotiveMismatch,
  MalformedSubstitution,
  IllFormedRedex,
  FuelExhausted,
  IoError,
};

const char* to_string(ErrorClass c);
std::optional<ErrorClass> error_class_from_string(const std::string& s);

struct Span {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  ErrorClass cls = ErrorClass::TypeMismatch;
  Span span;
  std::string message;
  std::string expected;
  std::string actual;
  std::string face;
  std::string hint;

  std::string render() const;
};

class CheckError : public std::runtime_error {
 public:
  explicit CheckError(Diagnostic d) : std::runtime_error(d.render()), diag_(std::move(d)) {}
  CheckError(ErrorClass c, std::string msg) : CheckError(make(c, std::move(msg))) {}
  const Diagnostic& diag() const { return diag_; }
  ErrorClass cls() const { return diag_.cls; }

 private:
  static Diagnostic make(ErrorClass c, std::string msg) {
    Diagnostic d;
    d.cls = c;
    d.message = std::move(msg);
    return d;
  }
  Diagnostic diag_;
};

}  // namespace cctt
