#pragma once

#include <string>

namespace prabhakar {

/// Parameters (alpha, beta, gamma, omega) of the Prabhakar kernel and
/// derivative, restricted to the range where the kernel is completely
/// monotonic:  omega < 0,  0 < alpha <= 1,  0 < alpha*gamma <= beta <= 1.
///
/// Construction throws Error(InvalidParam) naming the violated inequality.
/// beta == alpha*gamma is accepted up to a relative slack of 1e-12 so that
/// decimal inputs such as (0.8, 0.64, 0.8) are not rejected by rounding.
class PrabhakarParams {
 public:
  PrabhakarParams(double alpha, double beta, double gamma, double omega);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }
  [[nodiscard]] double omega() const noexcept { return omega_; }

  /// beta - alpha*gamma, snapped to exactly 0 inside the rounding slack.
  [[nodiscard]] double beta_minus_alpha_gamma() const noexcept { return excess_; }

  [[nodiscard]] PrabhakarParams with_omega(double omega) const {
    return {alpha_, beta_, gamma_, omega};
  }

  [[nodiscard]] std::string describe() const;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double omega_;
  double excess_;
};

}  // namespace prabhakar
