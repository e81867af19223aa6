#include "mdlq/error.hpp"

namespace mdlq {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InadmissibleIndex: return "InadmissibleIndex";
    case ErrorCode::NotSimilar: return "NotSimilar";
    case ErrorCode::NoRepresentation: return "NoRepresentation";
    case ErrorCode::GroupPropertyViolation: return "GroupPropertyViolation";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::ZeroEdge: return "ZeroEdge";
    case ErrorCode::PropertyCheckFailed: return "PropertyCheckFailed";
    case ErrorCode::NotALabel: return "NotALabel";
    case ErrorCode::AsymmetricEdgeSet: return "AsymmetricEdgeSet";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mdlq
