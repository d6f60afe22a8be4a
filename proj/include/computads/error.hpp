#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cptd {

enum class ErrorKind {
  DimensionViolation,
  CompositionGap,
  AssociativityFailure,
  UnknownSort,
  UnknownFace,
  UnknownCell,
  UnknownGenerator,
  UnknownSymbol,
  FunctorialityFailure,
  MissingAction,
  BaseMismatch,
  ArityDimensionViolation,
  BoundaryIllTyped,
  CocycleFailure,
  GluingIllTyped,
  IncompatibleArgs,
  SortMismatch,
  EndpointMismatch,
  NotVarToVar,
  NotMono,
  NotIdempotent,
  NotCompatible,
  BoundaryConditionFailure,
  PartialTable,
  DepthExceeded,
  SideConditionFailure,
  BadIndex,
  BadSubset,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cptd
