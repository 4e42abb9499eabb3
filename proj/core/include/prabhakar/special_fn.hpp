#pragma once

// Three-parameter Mittag-Leffler (Prabhakar) function
//
//   E^g_{a,b}(z) = sum_{k>=0} (g)_k z^k / (k! Gamma(a k + b)),
//
// the kernel e^g_{a,b}(t; w) = t^(b-1) E^g_{a,b}(w t^a), its Laplace
// transform, and the Prabhakar integral of power functions.

#include <vector>

#include "prabhakar/complex.hpp"
#include "prabhakar/params.hpp"

namespace prabhakar {

enum class Branch { Series, AlgebraicAsymptotic, ExponentialAsymptotic, Polynomial };

[[nodiscard]] const char* to_string(Branch branch) noexcept;

struct SeriesResult {
  Complex value;
  int terms_used = 0;
  double truncation_estimate = 0.0;  // magnitude of the last term added
  Branch branch = Branch::Series;
};

/// 1/Gamma(x); exactly zero at the poles x = 0, -1, -2, ...
[[nodiscard]] double reciprocal_gamma(double x) noexcept;

/// Power series summed with rising factorials, so any real gamma is valid
/// (gamma = -j gives the degree-j polynomial and branch == Polynomial).
///
/// The sum is accumulated in binary128 so that the alternating series stays
/// usable on the negative axis up to |z|^(1/alpha) of about 35-40. Stops
/// after two consecutive terms fall below tol*|sum| once the terms are in
/// their monotone tail. Throws NonConvergence after max_terms, InvalidParam
/// if alpha <= 0.
[[nodiscard]] SeriesResult prabhakar_series(double alpha, double beta, double gamma, Complex z,
                                            double tol = 1e-14, int max_terms = 10000);

/// Large-|z| expansion. For alpha*pi < |arg z| <= pi only the algebraic
/// series A(z e^{-/+ i pi}) is used; for |arg z| <= alpha*pi the exponential
/// part F (with the available inverse-factorial coefficients c_0..c_2) is
/// added. At most K algebraic terms are summed, fewer if the smallest term
/// of the (divergent) series is reached first.
///
/// Throws SectorUnavailable when the exponential part is needed but its
/// coefficients cannot be produced; InvalidParam for alpha outside (0, 1].
[[nodiscard]] SeriesResult prabhakar_asymptotic(double alpha, double beta, double gamma,
                                                Complex z, int K);

struct EvalOptions {
  double tol = 1e-14;
  /// Series are used while the cancellation exponent (|z|^(1/alpha) minus
  /// the growth of the exponential part) stays below this value.
  double switch_scale = 35.0;
  /// Number of algebraic terms allowed in the asymptotic branch.
  int asymptotic_terms = 400;
};

/// Dispatching evaluator: series where they are well conditioned, the
/// asymptotic expansion otherwise. Real z gives a real result.
[[nodiscard]] SeriesResult prabhakar_eval(double alpha, double beta, double gamma, Complex z,
                                          const EvalOptions& options = {});

/// e^g_{a,b}(t; w) = t^(b-1) E^g_{a,b}(w t^a), t > 0.
[[nodiscard]] double kernel_e(const PrabhakarParams& params, double t);

/// Laplace transform s^(a g - b) / (s^a - w)^g on principal branches.
/// Throws BranchCut on the negative real axis (for non-integer powers) and
/// DomainError at s = 0.
[[nodiscard]] Complex kernel_laplace(const PrabhakarParams& params, Complex s);

/// Prabhakar integral of tau -> tau^nu evaluated at t:
///   Gamma(nu+1) t^(nu+b) E^g_{a, b+nu+1}(w t^a).
[[nodiscard]] double integral_of_power(const PrabhakarParams& params, double nu, double t);

inline constexpr int kMaxInverseFactorialOrder = 2;

/// Leading coefficients c_0..c_K of the inverse factorial expansion
///   Gamma(g+s) Gamma(a s+1-g+b) / (Gamma(s+1) Gamma(a s+b))
///     ~ a^(1-g) sum_k c_k / (a s + 1 - g + b)_k,   |s| -> inf.
/// Obtained by a least-squares match on a grid of large s; results are
/// cached per (alpha, beta, gamma). Throws FitFailure if the match is poor,
/// InvalidParam if K is outside [0, kMaxInverseFactorialOrder].
[[nodiscard]] std::vector<double> inverse_factorial_leading(double alpha, double beta, double gamma,
                                                            int K = kMaxInverseFactorialOrder);

}  // namespace prabhakar
