#include "prabhakar/error.hpp"

namespace prabhakar {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SectorUnavailable: return "SectorUnavailable";
    case ErrorKind::FitFailure: return "FitFailure";
    case ErrorKind::CountUndefined: return "CountUndefined";
    case ErrorKind::ContourFailure: return "ContourFailure";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::ContourSingularity: return "ContourSingularity";
    case ErrorKind::NotAsymptotic: return "NotAsymptotic";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace prabhakar
