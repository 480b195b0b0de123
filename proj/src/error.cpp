#include "cctt/error.hpp"

#include <array>
#include <utility>

namespace cctt {

namespace {

constexpr std::array<std::pair<ErrorClass, const char*>, 37> kNames{{
    {ErrorClass::ParseError, "ParseError"},
    {ErrorClass::UnboundVariable, "UnboundVariable"},
    {ErrorClass::DuplicateName, "DuplicateName"},
    {ErrorClass::NotAFunction, "NotAFunction"},
    {ErrorClass::NotAPair, "NotAPair"},
    {ErrorClass::NotALater, "NotALater"},
    {ErrorClass::NotAForall, "NotAForall"},
    {ErrorClass::NotAPath, "NotAPath"},
    {ErrorClass::NotAType, "NotAType"},
    {ErrorClass::CannotInfer, "CannotInfer"},
    {ErrorClass::ClockMismatch, "ClockMismatch"},
    {ErrorClass::TickEscape, "TickEscape"},
    {ErrorClass::DiamondOutsideForcing, "DiamondOutsideForcing"},
    {ErrorClass::NotATick, "NotATick"},
    {ErrorClass::NoCommonResidual, "NoCommonResidual"},
    {ErrorClass::TypeMismatch, "TypeMismatch"},
    {ErrorClass::EndpointMismatch, "EndpointMismatch"},
    {ErrorClass::IncompatibleOverlap, "IncompatibleOverlap"},
    {ErrorClass::TubeMismatch, "TubeMismatch"},
    {ErrorClass::BaseBoundaryMismatch, "BaseBoundaryMismatch"},
    {ErrorClass::TransNotConstant, "TransNotConstant"},
    {ErrorClass::NonProperEntry, "NonProperEntry"},
    {ErrorClass::IllTypedEntry, "IllTypedEntry"},
    {ErrorClass::ForwardConstructorReference, "ForwardConstructorReference"},
    {ErrorClass::BoundaryNotCovering, "BoundaryNotCovering"},
    {ErrorClass::BoundaryIncompatible, "BoundaryIncompatible"},
    {ErrorClass::PointConstructorBoundary, "PointConstructorBoundary"},
    {ErrorClass::NotABoundaryTerm, "NotABoundaryTerm"},
    {ErrorClass::UnknownConstructor, "UnknownConstructor"},
    {ErrorClass::ArityMismatch, "ArityMismatch"},
    {ErrorClass::CaseMissing, "CaseMissing"},
    {ErrorClass::CaseBoundaryMismatch, "CaseBoundaryMismatch"},
    {ErrorClass::MotiveMismatch, "MotiveMismatch"},
    {ErrorClass::MalformedSubstitution, "MalformedSubstitution"},
    {ErrorClass::IllFormedRedex, "IllFormedRedex"},
    {ErrorClass::FuelExhausted, "FuelExhausted"},
    {ErrorClass::IoError, "IoError"},
}};

}  // namespace

const char* to_string(ErrorClass c) {
  for (auto& [k, n] : kNames)
    if (k == c) return n;
  return "?";
}

std::optional<ErrorClass> error_class_from_string(const std::string& s) {
  for (auto& [k, n] : kNames)
    if (s == n) return k;
  return std::nullopt;
}

std::string Diagnostic::render() const {
  std::string out = to_string(cls);
  if (span.line > 0) out += " at " + std::to_string(span.line) + ":" + std::to_string(span.col);
  out += ": " + message;
  if (!expected.empty()) out += "\n  expected: " + expected;
  if (!actual.empty()) out += "\n  actual:   " + actual;
  if (!face.empty()) out += "\n  on face:  " + face;
  if (!hint.empty()) out += "\n  hint: " + hint;
  return out;
}

}  // namespace cctt
