#pragma once

// Stability region of D^g_{a,b,w} y = A y. An eigenvalue lambda of A is
// stable iff no root of F(s) = s^(b-ag)(s^a - w)^g = lambda has Re s >= 0.
// The region is bounded by the curve Lambda(theta), theta in [0, a pi/2),
// and its conjugate.

#include <optional>
#include <vector>

#include "prabhakar/complex.hpp"
#include "prabhakar/params.hpp"

namespace prabhakar {

struct BoundaryCurve {
  PrabhakarParams params;
  std::vector<double> thetas;
  std::vector<Complex> points;
  double arg_min = 0.0;  // (b - a g) pi / 2
  double arg_sup = 0.0;  // b pi / 2, approached as theta -> a pi / 2
};

enum class Verdict { Stable, Unstable, Marginal };

[[nodiscard]] const char* to_string(Verdict verdict) noexcept;

struct StabilityVerdict {
  Verdict status = Verdict::Stable;
  /// Curve modulus R(phi) at phi = |Arg lambda|, when phi is inside the
  /// argument band of the curve.
  std::optional<double> boundary_modulus;
  /// |lambda| - R(phi); same availability as boundary_modulus.
  std::optional<double> margin;
  bool special_case_zero = false;  // lambda == 0
};

struct SpectrumVerdict {
  StabilityVerdict overall;
  std::vector<StabilityVerdict> per_eigenvalue;
};

struct RootLocusPoint {
  double theta = 0.0;
  double mu = 0.0;   // F(i mu) = Lambda(theta)
  double rho = 0.0;  // |s^a - w| at s = i mu
};

struct CriticalOmega {
  double omega_star = 0.0;
  double theta_star = 0.0;
};

/// Upper end a pi / 2 of the curve parameter.
[[nodiscard]] double theta_limit(const PrabhakarParams& params) noexcept;

/// Lambda(theta). theta = 0 gives the continuous extension (0 when b > ag,
/// |w|^g when b = ag). Throws DomainError outside [0, a pi / 2).
[[nodiscard]] Complex curve_point(const PrabhakarParams& params, double theta);

/// |Lambda(theta)|, computed in log form.
[[nodiscard]] double curve_modulus(const PrabhakarParams& params, double theta);

/// n points on a theta grid graded geometrically toward a pi / 2. By default
/// the grid stops where |Lambda| reaches modulus_cap. Throws InvalidParam for
/// n < 2 or a cap outside (0, a pi / 2).
[[nodiscard]] BoundaryCurve curve_sample(const PrabhakarParams& params, int n,
                                         std::optional<double> theta_cap = std::nullopt,
                                         double modulus_cap = 1e3);

/// Marginal is a band of half-width tol * |lambda| around the curve.
[[nodiscard]] StabilityVerdict classify(const PrabhakarParams& params, Complex lambda,
                                        double tol = 1e-9);

/// Stable iff every eigenvalue is stable; Unstable if any is unstable.
/// Throws InvalidParam on an empty list.
[[nodiscard]] SpectrumVerdict classify_spectrum(const PrabhakarParams& params,
                                                const std::vector<Complex>& eigenvalues,
                                                double tol = 1e-9);

[[nodiscard]] RootLocusPoint root_locus(const PrabhakarParams& params, double theta);

/// F(s) = s^(b-ag) (s^a - w)^g on principal branches. Throws BranchCut on the
/// negative real axis when a power is non-integer.
[[nodiscard]] Complex characteristic_value(const PrabhakarParams& params, Complex s);

/// Number of roots of F(s) = lambda in the right half-disk of radius
/// |lambda|^(1/b) (1 + margin), by the argument principle. Throws
/// CountUndefined when lambda classifies as Marginal at tol, ContourFailure
/// if the contour refinement does not settle.
[[nodiscard]] int count_unstable_roots(const PrabhakarParams& params, Complex lambda,
                                       double margin = 0.1, double tol = 1e-9);

/// Root of F(s) = A with the largest real part, found by damped Newton on
/// s^mu - w s^(mu-a) - A^(1/g) (mu = b/g) over the branches of A^(1/g).
/// A real root is preferred for real A. Throws NonConvergence or
/// ValidationFailed (|F(s) - A| >= 1e-10 |A| for every candidate).
[[nodiscard]] Complex dominant_singularity(const PrabhakarParams& params, Complex A);

/// omega < 0 that places lambda on the curve. Arg Lambda does not depend on
/// omega and |Lambda| scales as |w|^(b/a), so both values are closed form.
/// Throws OutOfRange if Arg lambda is outside ((b-ag) pi/2, b pi/2).
[[nodiscard]] CriticalOmega critical_omega(double alpha, double beta, double gamma,
                                           Complex lambda);

/// gamma -> 0 limit: Stable iff |Arg lambda| > b pi / 2, Marginal on the
/// wedge boundary.
[[nodiscard]] StabilityVerdict matignon_wedge(double beta, Complex lambda);

}  // namespace prabhakar
