#include "prabhakar/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "prabhakar/error.hpp"

namespace prabhakar {

namespace {

constexpr double kPi = std::numbers::pi;

double arg_min(const PrabhakarParams& p) noexcept {
  return p.beta_minus_alpha_gamma() * kPi / 2.0;
}

double arg_sup(const PrabhakarParams& p) noexcept { return p.beta() * kPi / 2.0; }

void check_theta(const PrabhakarParams& params, double theta) {
  if (!(theta >= 0.0 && theta < theta_limit(params))) {
    throw Error(ErrorKind::DomainError,
                "theta must lie in [0, alpha*pi/2), got " + std::to_string(theta));
  }
}

// theta where |Lambda| first reaches cap, searched in log of the distance to
// the endpoint a pi / 2.
double theta_at_modulus(const PrabhakarParams& params, double cap) {
  const double tmax = theta_limit(params);
  const double d_min = 1e-14 * tmax;
  if (curve_modulus(params, tmax - d_min) < cap) return tmax - d_min;
  double lo = std::log(d_min);  // modulus >= cap here
  double hi = std::log(tmax * (1.0 - 1e-9));
  if (curve_modulus(params, tmax - std::exp(hi)) >= cap) return 0.5 * tmax;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (curve_modulus(params, tmax - std::exp(mid)) >= cap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return tmax - std::exp(hi);
}

Complex g_value(double mu, double nu, double omega, Complex s, Complex B) {
  return principal_pow(s, mu) - omega * principal_pow(s, nu) - B;
}

Complex g_derivative(double mu, double nu, double omega, Complex s) {
  Complex d = mu * principal_pow(s, mu - 1.0);
  if (nu != 0.0) d -= omega * nu * principal_pow(s, nu - 1.0);
  return d;
}

// Damped Newton; returns false if the iteration stalls before converging.
bool newton_g(double mu, double nu, double omega, Complex B, Complex& s) {
  Complex gs = g_value(mu, nu, omega, s, B);
  const double scale = std::max(1.0, std::abs(B));
  for (int it = 0; it < 100; ++it) {
    if (std::abs(gs) <= 1e-15 * scale) return true;
    const Complex dg = g_derivative(mu, nu, omega, s);
    if (!std::isfinite(std::abs(dg)) || dg == Complex(0.0, 0.0)) return false;
    const Complex step = gs / dg;
    double damping = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      const Complex trial = s - damping * step;
      const Complex gt = g_value(mu, nu, omega, trial, B);
      if (std::isfinite(std::abs(gt)) && std::abs(gt) < std::abs(gs)) {
        s = trial;
        gs = gt;
        accepted = true;
        break;
      }
      damping *= 0.5;
    }
    if (!accepted) return std::abs(gs) <= 1e-12 * scale;
    if (std::abs(damping * step) <= 1e-15 * std::max(1.0, std::abs(s))) return true;
  }
  return std::abs(gs) <= 1e-12 * scale;
}

// Newton on F(s) - A using F'(s) = F(s) (b + a g w / (s^a - w)) / s.
void polish(const PrabhakarParams& p, Complex A, Complex& s) {
  if (s == Complex(0.0, 0.0)) return;
  double best = std::abs(characteristic_value(p, s) - A);
  for (int it = 0; it < 40; ++it) {
    const Complex F = characteristic_value(p, s);
    const Complex sa = principal_pow(s, p.alpha());
    const Complex dF =
        F * (p.beta() + p.alpha() * p.gamma() * p.omega() / (sa - p.omega())) / s;
    if (!std::isfinite(std::abs(dF)) || dF == Complex(0.0, 0.0)) return;
    const Complex trial = s - (F - A) / dF;
    if (on_negative_real_axis(trial) || trial == Complex(0.0, 0.0)) return;
    const double r = std::abs(characteristic_value(p, trial) - A);
    if (!(r < best)) return;
    best = r;
    s = trial;
  }
}

}  // namespace

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Marginal: return "Marginal";
  }
  return "Unknown";
}

double theta_limit(const PrabhakarParams& params) noexcept {
  return params.alpha() * kPi / 2.0;
}

double curve_modulus(const PrabhakarParams& params, double theta) {
  check_theta(params, theta);
  const double a = params.alpha();
  const double g = params.gamma();
  const double ex = params.beta_minus_alpha_gamma();
  const double absw = -params.omega();
  if (theta == 0.0) return ex > 0.0 ? 0.0 : std::pow(absw, g);
  const double b_over_a = params.beta() / a;
  const double log_mod = b_over_a * std::log(absw) + (ex / a) * std::log(std::sin(theta)) +
                         g * std::log(std::sin(a * kPi / 2.0)) -
                         b_over_a * std::log(std::sin(a * kPi / 2.0 - theta));
  return std::exp(log_mod);
}

Complex curve_point(const PrabhakarParams& params, double theta) {
  const double mod = curve_modulus(params, theta);
  return std::polar(mod, params.gamma() * theta + arg_min(params));
}

BoundaryCurve curve_sample(const PrabhakarParams& params, int n, std::optional<double> theta_cap,
                           double modulus_cap) {
  if (n < 2) throw Error(ErrorKind::InvalidParam, "curve_sample needs at least 2 points");
  const double tmax = theta_limit(params);
  double cap = 0.0;
  if (theta_cap) {
    if (!(*theta_cap > 0.0 && *theta_cap < tmax)) {
      throw Error(ErrorKind::InvalidParam, "theta_cap must lie in (0, alpha*pi/2)");
    }
    cap = *theta_cap;
  } else {
    if (!(modulus_cap > 0.0)) throw Error(ErrorKind::InvalidParam, "modulus_cap must be positive");
    cap = theta_at_modulus(params, modulus_cap);
  }

  BoundaryCurve curve{params, {}, {}, arg_min(params), arg_sup(params)};
  curve.thetas.reserve(static_cast<std::size_t>(n));
  curve.points.reserve(static_cast<std::size_t>(n));
  const double ratio = (tmax - cap) / tmax;
  for (int i = 0; i < n; ++i) {
    double theta = 0.0;
    if (i == n - 1) {
      theta = cap;
    } else if (i > 0) {
      theta = tmax - tmax * std::pow(ratio, static_cast<double>(i) / (n - 1));
    }
    curve.thetas.push_back(theta);
    curve.points.push_back(curve_point(params, theta));
  }
  return curve;
}

StabilityVerdict classify(const PrabhakarParams& params, Complex lambda, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParam, "tol must be positive");
  StabilityVerdict v;
  const double r = std::abs(lambda);
  if (r == 0.0) {
    v.special_case_zero = true;
    if (params.beta_minus_alpha_gamma() == 0.0) {
      const double R = curve_modulus(params, 0.0);
      v.status = Verdict::Stable;
      v.boundary_modulus = R;
      v.margin = -R;
    } else {
      v.status = Verdict::Marginal;
      v.boundary_modulus = 0.0;
      v.margin = 0.0;
    }
    return v;
  }

  const double phi = std::abs(principal_arg(lambda));
  if (phi >= arg_sup(params)) {
    v.status = Verdict::Stable;
    return v;
  }
  if (phi < arg_min(params)) {
    v.status = Verdict::Unstable;
    return v;
  }
  const double theta0 =
      std::min((phi - arg_min(params)) / params.gamma(), std::nextafter(theta_limit(params), 0.0));
  const double R = curve_modulus(params, theta0);
  const double margin = r - R;
  v.boundary_modulus = R;
  v.margin = margin;
  const double band = tol * r;
  if (margin < -band) {
    v.status = Verdict::Stable;
  } else if (margin > band) {
    v.status = Verdict::Unstable;
  } else {
    v.status = Verdict::Marginal;
  }
  return v;
}

SpectrumVerdict classify_spectrum(const PrabhakarParams& params,
                                  const std::vector<Complex>& eigenvalues, double tol) {
  if (eigenvalues.empty()) throw Error(ErrorKind::InvalidParam, "empty eigenvalue list");
  SpectrumVerdict out;
  bool any_unstable = false;
  bool all_stable = true;
  for (const Complex& l : eigenvalues) {
    out.per_eigenvalue.push_back(classify(params, l, tol));
    const Verdict s = out.per_eigenvalue.back().status;
    any_unstable = any_unstable || s == Verdict::Unstable;
    all_stable = all_stable && s == Verdict::Stable;
  }
  out.overall.status =
      any_unstable ? Verdict::Unstable : (all_stable ? Verdict::Stable : Verdict::Marginal);
  return out;
}

RootLocusPoint root_locus(const PrabhakarParams& params, double theta) {
  check_theta(params, theta);
  const double absw = -params.omega();
  const double half = params.alpha() * kPi / 2.0;
  const double denom = std::sin(half - theta);
  RootLocusPoint p;
  p.theta = theta;
  p.mu = std::pow(absw * std::sin(theta) / denom, 1.0 / params.alpha());
  p.rho = absw * std::sin(half) / denom;
  return p;
}

Complex characteristic_value(const PrabhakarParams& params, Complex s) {
  const double ex = params.beta_minus_alpha_gamma();
  const double a = params.alpha();
  if (on_negative_real_axis(s) && (!is_integer(a) || !is_integer(ex))) {
    throw Error(ErrorKind::BranchCut, "s lies on the negative real axis");
  }
  const Complex base = principal_pow(s, a) - params.omega();
  if (on_negative_real_axis(base) && !is_integer(params.gamma())) {
    throw Error(ErrorKind::BranchCut, "s^alpha - omega lies on the negative real axis");
  }
  return principal_pow(s, ex) * principal_pow(base, params.gamma());
}

Complex dominant_singularity(const PrabhakarParams& params, Complex A) {
  if (A == Complex(0.0, 0.0) || !std::isfinite(std::abs(A))) {
    throw Error(ErrorKind::DomainError, "dominant_singularity needs a finite non-zero A");
  }
  const double g = params.gamma();
  const double mu = params.beta() / g;
  const double nu = params.beta_minus_alpha_gamma() / g;  // mu - alpha
  const double w = params.omega();
  const Complex B0 = principal_pow(A, 1.0 / g);

  // principal branch first, then rotations by e^{+-2 pi i k / g}
  const int kmax = static_cast<int>(std::ceil(1.0 / g)) + 1;
  std::vector<Complex> starts;
  std::vector<Complex> branches;
  for (int k = 0; k <= kmax; ++k) {
    for (int sign : {1, -1}) {
      if (k == 0 && sign < 0) continue;
      const Complex B = B0 * std::polar(1.0, 2.0 * kPi * sign * k / g);
      branches.push_back(B);
      starts.push_back(principal_pow(B, 1.0 / mu));
    }
  }

  const double tol = 1e-10 * std::abs(A);
  bool converged_any = false;
  std::vector<Complex> roots;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    Complex s = starts[i];
    if (s == Complex(0.0, 0.0) || on_negative_real_axis(s)) s += Complex(0.0, 1e-8);
    if (!newton_g(mu, nu, w, branches[i], s)) continue;
    converged_any = true;
    if (on_negative_real_axis(s)) continue;
    polish(params, A, s);
    if (std::abs(characteristic_value(params, s) - A) < tol) roots.push_back(s);
  }
  if (roots.empty()) {
    if (!converged_any) {
      throw Error(ErrorKind::NonConvergence, "Newton failed on every branch of A^(1/gamma)");
    }
    throw Error(ErrorKind::ValidationFailed,
                "no candidate root satisfies |F(s) - A| < 1e-10 |A|");
  }
  if (A.imag() == 0.0) {
    for (Complex& s : roots) {
      if (std::abs(s.imag()) <= 1e-14 * std::max(1.0, std::abs(s))) return {s.real(), 0.0};
    }
  }
  Complex best = roots.front();
  for (const Complex& s : roots) {
    if (s.real() > best.real() + 1e-12 * std::max(1.0, std::abs(best))) best = s;
  }
  // several branches can land on the same root; keep the best-resolved copy
  double best_residual = std::abs(characteristic_value(params, best) - A);
  for (const Complex& s : roots) {
    if (std::abs(s - best) > 1e-8 * std::max(1.0, std::abs(best))) continue;
    const double r = std::abs(characteristic_value(params, s) - A);
    if (r < best_residual) {
      best = s;
      best_residual = r;
    }
  }
  return best;
}

CriticalOmega critical_omega(double alpha, double beta, double gamma, Complex lambda) {
  const PrabhakarParams unit(alpha, beta, gamma, -1.0);
  const double phi = principal_arg(lambda);
  if (!(lambda.imag() > 0.0) || !(phi > arg_min(unit) && phi < arg_sup(unit))) {
    throw Error(ErrorKind::OutOfRange,
                "Arg(lambda) must lie in ((beta - alpha*gamma) pi/2, beta pi/2)");
  }
  CriticalOmega out;
  out.theta_star = (phi - arg_min(unit)) / gamma;
  const double M = curve_modulus(unit, out.theta_star);
  out.omega_star = -std::pow(std::abs(lambda) / M, alpha / beta);
  return out;
}

StabilityVerdict matignon_wedge(double beta, Complex lambda) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error(ErrorKind::InvalidParam, "matignon_wedge requires 0 < beta <= 1");
  }
  const double phi = std::abs(principal_arg(lambda));
  const double edge = beta * kPi / 2.0;
  StabilityVerdict v;
  if (std::abs(phi - edge) <= 4.0 * std::numeric_limits<double>::epsilon() * edge) {
    v.status = Verdict::Marginal;
  } else {
    v.status = phi > edge ? Verdict::Stable : Verdict::Unstable;
  }
  v.special_case_zero = lambda == Complex(0.0, 0.0);
  return v;
}

}  // namespace prabhakar
