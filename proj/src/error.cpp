#include "hminlag/error.hpp"

namespace hminlag {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::ChartFailure: return "ChartFailure";
    case ErrorKind::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::ApexPoint: return "ApexPoint";
    case ErrorKind::NotACone: return "NotACone";
    case ErrorKind::ChartUnavailable: return "ChartUnavailable";
    case ErrorKind::NonFreeWitness: return "NonFreeWitness";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::IOError: return "IOError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace hminlag
