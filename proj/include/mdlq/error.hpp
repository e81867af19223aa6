#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdlq {

enum class ErrorCode {
  InadmissibleIndex,
  NotSimilar,
  NoRepresentation,
  GroupPropertyViolation,
  SizeMismatch,
  ZeroEdge,
  PropertyCheckFailed,
  NotALabel,
  AsymmetricEdgeSet,
  ResourceLimit,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mdlq
