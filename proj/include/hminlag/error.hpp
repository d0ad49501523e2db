#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hminlag {

enum class ErrorKind {
  RankDeficient,
  SingularBasis,
  DimensionMismatch,
  Overflow,
  SingularPoint,
  NoConvergence,
  SingularJacobian,
  SamplingExhausted,
  ChartFailure,
  MeshTooCoarse,
  DimensionUnsupported,
  ApexPoint,
  NotACone,
  ChartUnavailable,
  NonFreeWitness,
  Unsupported,
  ConfigInvalid,
  IOError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hminlag
