#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prabhakar {

enum class ErrorKind {
  InvalidParam,
  DomainError,
  OutOfRange,
  BranchCut,
  NonConvergence,
  SectorUnavailable,
  FitFailure,
  CountUndefined,
  ContourFailure,
  ValidationFailed,
  IllConditioned,
  NewtonDivergence,
  ContourSingularity,
  NotAsymptotic,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

// Errors caused by bad input rather than by a numerical breakdown.
[[nodiscard]] constexpr bool is_validation_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::InvalidParam || kind == ErrorKind::DomainError ||
         kind == ErrorKind::OutOfRange;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace prabhakar
