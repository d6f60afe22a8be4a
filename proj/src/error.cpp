#include "computads/error.hpp"

namespace cptd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionViolation: return "DimensionViolation";
    case ErrorKind::CompositionGap: return "CompositionGap";
    case ErrorKind::AssociativityFailure: return "AssociativityFailure";
    case ErrorKind::UnknownSort: return "UnknownSort";
    case ErrorKind::UnknownFace: return "UnknownFace";
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::FunctorialityFailure: return "FunctorialityFailure";
    case ErrorKind::MissingAction: return "MissingAction";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::ArityDimensionViolation: return "ArityDimensionViolation";
    case ErrorKind::BoundaryIllTyped: return "BoundaryIllTyped";
    case ErrorKind::CocycleFailure: return "CocycleFailure";
    case ErrorKind::GluingIllTyped: return "GluingIllTyped";
    case ErrorKind::IncompatibleArgs: return "IncompatibleArgs";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NotVarToVar: return "NotVarToVar";
    case ErrorKind::NotMono: return "NotMono";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::BoundaryConditionFailure: return "BoundaryConditionFailure";
    case ErrorKind::PartialTable: return "PartialTable";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::SideConditionFailure: return "SideConditionFailure";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadSubset: return "BadSubset";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace cptd
