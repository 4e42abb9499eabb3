#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace prabhakar {

using Complex = std::complex<double>;

/// Principal argument in (-pi, pi]. A negative real number with a signed
/// zero imaginary part is mapped to +pi, never -pi.
[[nodiscard]] inline double principal_arg(Complex z) noexcept {
  if (z.imag() == 0.0) return z.real() < 0.0 ? std::numbers::pi : 0.0;
  return std::arg(z);
}

[[nodiscard]] inline Complex principal_log(Complex z) noexcept {
  return {std::log(std::abs(z)), principal_arg(z)};
}

/// z^p on the principal branch; 0^p is 0 for p > 0 and 1 for p == 0.
[[nodiscard]] inline Complex principal_pow(Complex z, double p) noexcept {
  if (p == 0.0) return {1.0, 0.0};
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  const double phase = p * principal_arg(z);
  const double mod = std::pow(r, p);
  return {mod * std::cos(phase), mod * std::sin(phase)};
}

[[nodiscard]] inline bool on_negative_real_axis(Complex z) noexcept {
  return z.imag() == 0.0 && z.real() < 0.0;
}

[[nodiscard]] inline bool is_integer(double x) noexcept { return std::nearbyint(x) == x; }

}  // namespace prabhakar
