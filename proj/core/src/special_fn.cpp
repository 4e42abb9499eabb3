#include "prabhakar/special_fn.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>

#include <Eigen/Dense>

#include "prabhakar/error.hpp"

namespace prabhakar {

namespace {

using quad = __float128;

constexpr double kPi = std::numbers::pi;

bool is_pole(double x) noexcept { return x <= 0.0 && is_integer(x); }

// sin(pi x) with the argument reduced before multiplying by pi.
double sin_pi(double x) noexcept {
  const double r = std::remainder(x, 2.0);
  return std::sin(kPi * r);
}

// log|1/Gamma(x)| and its sign; sign == 0 at the poles.
double log_abs_rgamma(double x, int& sign) noexcept {
  if (is_pole(x)) {
    sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  if (x > 0.0) {
    sign = 1;
    int s = 0;
    return -lgamma_r(x, &s);
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const double sp = sin_pi(x);
  sign = sp > 0.0 ? 1 : -1;
  int s = 0;
  return std::log(std::abs(sp)) + lgamma_r(1.0 - x, &s) - std::log(kPi);
}

quad rgamma_q(quad x) noexcept {
  if (x <= 0 && x == floorq(x)) return 0;
  if (x > 1750) return 0;
  return 1 / tgammaq(x);
}

// Per-thread tables of 1/Gamma(a k + b) and Gamma(a k + b)/Gamma(a k + a + b).
// Repeated evaluations with the same (a, b), as in the solver's starting
// weights, then skip the binary128 Gamma calls.
class GammaTable {
 public:
  static GammaTable& get(double alpha, double beta) {
    thread_local std::array<GammaTable, 4> slots;
    thread_local std::size_t next = 0;
    for (GammaTable& t : slots) {
      if (t.alpha_ == alpha && t.beta_ == beta) return t;
    }
    GammaTable& t = slots[next];
    next = (next + 1) % slots.size();
    t.alpha_ = alpha;
    t.beta_ = beta;
    t.rgamma_.clear();
    t.ratio_.clear();
    return t;
  }

  quad rgamma(int k) {
    extend(k);
    return rgamma_[static_cast<std::size_t>(k)];
  }

  double gamma_ratio(int k) {
    extend(k);
    return ratio_[static_cast<std::size_t>(k)];
  }

 private:
  void extend(int k) {
    while (static_cast<int>(rgamma_.size()) <= k) {
      const int j = static_cast<int>(rgamma_.size());
      const double x = alpha_ * j + beta_;
      rgamma_.push_back(rgamma_q(static_cast<quad>(alpha_) * j + beta_));
      int s = 0;
      ratio_.push_back(x > 0.0 ? std::exp(lgamma_r(x, &s) - lgamma_r(x + alpha_, &s)) : 0.0);
    }
  }

  double alpha_ = std::numeric_limits<double>::quiet_NaN();
  double beta_ = std::numeric_limits<double>::quiet_NaN();
  std::vector<quad> rgamma_;
  std::vector<double> ratio_;
};

// lnGamma(x + a) - lnGamma(x + b) for large x without cancellation.
double log_gamma_ratio(double x, double a, double b) noexcept {
  static constexpr std::array<double, 8> kB2m = {1.0 / 6,     -1.0 / 30,     1.0 / 42,
                                                 -1.0 / 30,   5.0 / 66,      -691.0 / 2730,
                                                 7.0 / 6,     -3617.0 / 510};
  const double x1 = x + a;
  const double x2 = x + b;
  const double d = a - b;
  double value = (x2 - 0.5) * std::log1p(d / x2) + d * std::log(x1) - d;
  for (std::size_t m = 1; m <= kB2m.size(); ++m) {
    const double p = static_cast<double>(2 * m - 1);
    const double coeff = kB2m[m - 1] / (2.0 * m * p);
    value += coeff * (std::pow(x1, -p) - std::pow(x2, -p));
  }
  return value;
}

struct ExpansionTerms {
  Complex sum;
  int terms = 0;
  double estimate = 0.0;
};

// Algebraic series sum_k (-1)^k (g)_k/k! / Gamma(b - a(k+g)) w^(-g-k), with
// w = r e^{i argw}, truncated at K terms or at its smallest term.
ExpansionTerms algebraic_part(double alpha, double beta, double gamma, double r, double argw,
                              int K) {
  ExpansionTerms out;
  const double log_r = std::log(r);
  double poch = 1.0;  // (g)_k / k!
  double prev_envelope = std::numeric_limits<double>::infinity();
  int small = 0;
  for (int k = 0; k < K; ++k) {
    if (poch == 0.0) break;
    const double x = beta - alpha * (k + gamma);
    // smooth envelope |(g)_k/k!| Gamma(1-x)/pi r^(-k-g); the sine factor in
    // 1/Gamma(x) makes the actual terms oscillate
    int s = 0;
    const double log_env = std::log(std::abs(poch)) +
                           (1.0 - x > 0.0 ? lgamma_r(1.0 - x, &s) - std::log(kPi) : 0.0) -
                           (k + gamma) * log_r;
    const double envelope = std::exp(log_env);
    if (k >= 1 && 1.0 - x > 2.0 && envelope > prev_envelope) break;

    int sign = 0;
    const double log_rg = log_abs_rgamma(x, sign);
    if (sign != 0) {
      const double log_mag = std::log(std::abs(poch)) + log_rg - (k + gamma) * log_r;
      const double mag = std::exp(log_mag) * (poch < 0.0 ? -1.0 : 1.0) * sign *
                         ((k % 2 == 0) ? 1.0 : -1.0);
      const double phase = -(k + gamma) * argw;
      out.sum += Complex(mag * std::cos(phase), mag * std::sin(phase));
    }
    out.terms = k + 1;
    out.estimate = envelope;
    prev_envelope = envelope;
    if (envelope <= 1e-17 * std::abs(out.sum)) {
      if (++small >= 2) break;
    } else {
      small = 0;
    }
    poch *= (gamma + k) / (k + 1.0);
  }
  return out;
}

std::string fmt_params(double alpha, double beta, double gamma) {
  return "alpha=" + std::to_string(alpha) + ", beta=" + std::to_string(beta) +
         ", gamma=" + std::to_string(gamma);
}

}  // namespace

const char* to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::Series: return "series";
    case Branch::AlgebraicAsymptotic: return "algebraic-asymptotic";
    case Branch::ExponentialAsymptotic: return "exponential-asymptotic";
    case Branch::Polynomial: return "polynomial";
  }
  return "unknown";
}

double reciprocal_gamma(double x) noexcept {
  if (is_pole(x)) return 0.0;
  if (x > 0.0 && x < 171.0) return 1.0 / std::tgamma(x);
  if (x < 0.0 && x > -170.0) return 1.0 / std::tgamma(x);
  int sign = 0;
  const double l = log_abs_rgamma(x, sign);
  return sign * std::exp(l);
}

SeriesResult prabhakar_series(double alpha, double beta, double gamma, Complex z, double tol,
                              int max_terms) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidParam, "series requires alpha > 0");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParam, "tol must be positive");
  if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(z.real()) ||
      !std::isfinite(z.imag())) {
    throw Error(ErrorKind::InvalidParam, "non-finite argument to series");
  }

  const quad zr = z.real();
  const quad zi = z.imag();
  const double absz = std::abs(z);
  quad pr = 1;  // (g)_k z^k / k!
  quad pi = 0;
  quad sr = 0;
  quad si = 0;
  int small = 0;

  GammaTable& table = GammaTable::get(alpha, beta);
  SeriesResult out;
  for (int k = 0; k < max_terms; ++k) {
    const quad rg = table.rgamma(k);
    const quad tr = pr * rg;
    const quad ti = pi * rg;
    sr += tr;
    si += ti;
    out.terms_used = k + 1;
    const double tmag = std::hypot(static_cast<double>(tr), static_cast<double>(ti));
    const double smag = std::hypot(static_cast<double>(sr), static_cast<double>(si));
    out.truncation_estimate = tmag;

    if (gamma + k == 0.0) {
      out.value = Complex(static_cast<double>(sr), static_cast<double>(si));
      out.branch = Branch::Polynomial;
      return out;
    }
    // |t_{k+1}/t_k| decreases from here on
    const bool tail = alpha * k + beta >= 2.0 && gamma + k > 0.0 &&
                      std::abs(gamma + k) / (k + 1.0) * absz * table.gamma_ratio(k) < 1.0;
    if (tail && tmag <= tol * smag) {
      if (++small >= 2) {
        out.value = Complex(static_cast<double>(sr), static_cast<double>(si));
        out.branch = Branch::Series;
        return out;
      }
    } else {
      small = 0;
    }

    const quad f = (static_cast<quad>(gamma) + k) / (k + 1);
    const quad nr = f * (pr * zr - pi * zi);
    const quad ni = f * (pr * zi + pi * zr);
    pr = nr;
    pi = ni;
    if (!finiteq(pr) || !finiteq(pi)) break;
  }
  throw Error(ErrorKind::NonConvergence,
              "series did not converge within " + std::to_string(max_terms) + " terms (" +
                  fmt_params(alpha, beta, gamma) + ", |z|=" + std::to_string(absz) + ")");
}

SeriesResult prabhakar_asymptotic(double alpha, double beta, double gamma, Complex z, int K) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidParam, "asymptotic expansion requires 0 < alpha <= 1");
  }
  if (K < 1) throw Error(ErrorKind::InvalidParam, "K must be at least 1");
  const double r = std::abs(z);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::DomainError, "asymptotic expansion needs finite non-zero z");
  }

  const double argz = principal_arg(z);
  const double argw = argz > 0.0 ? argz - kPi : argz + kPi;
  const ExpansionTerms alg = algebraic_part(alpha, beta, gamma, r, argw, K);

  SeriesResult out;
  out.value = alg.sum;
  out.terms_used = alg.terms;
  out.truncation_estimate = alg.estimate;
  out.branch = Branch::AlgebraicAsymptotic;

  if (std::abs(argz) <= alpha * kPi) {
    out.branch = Branch::ExponentialAsymptotic;
    const double rg = reciprocal_gamma(gamma);
    if (rg != 0.0) {
      const int order = std::min(K - 1, kMaxInverseFactorialOrder);
      std::vector<double> c;
      try {
        c = inverse_factorial_leading(alpha, beta, gamma, order);
      } catch (const Error& e) {
        throw Error(ErrorKind::SectorUnavailable,
                    std::string("exponential coefficients unavailable: ") + e.what());
      }
      const Complex zeta = principal_pow(z, 1.0 / alpha);
      Complex poly = 0.0;
      Complex zinv_k = 1.0;
      const Complex zinv = 1.0 / zeta;
      for (double ck : c) {
        poly += ck * zinv_k;
        zinv_k *= zinv;
      }
      const Complex F = rg * std::exp(zeta) * principal_pow(z, (gamma - beta) / alpha) *
                        std::pow(alpha, -gamma) * poly;
      out.value += F;
    }
  }
  return out;
}

SeriesResult prabhakar_eval(double alpha, double beta, double gamma, Complex z,
                            const EvalOptions& options) {
  const bool polynomial = gamma <= 0.0 && is_integer(gamma);
  const double r = std::abs(z);
  bool use_series = polynomial || alpha > 1.0 || r == 0.0;
  if (!use_series) {
    const double X = std::pow(r, 1.0 / alpha);
    const double argz = principal_arg(z);
    const double growth =
        std::abs(argz) <= alpha * kPi ? X * std::cos(argz / alpha) : -X;
    const double cancellation = X - std::max(0.0, growth);
    use_series = cancellation <= options.switch_scale;
  }

  SeriesResult out;
  if (use_series) {
    out = prabhakar_series(alpha, beta, gamma, z, options.tol);
  } else {
    out = prabhakar_asymptotic(alpha, beta, gamma, z, options.asymptotic_terms);
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw Error(ErrorKind::NonConvergence,
                "Prabhakar function overflowed at |z|=" + std::to_string(r));
  }
  if (z.imag() == 0.0) out.value.imag(0.0);
  return out;
}

double kernel_e(const PrabhakarParams& params, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::DomainError, "kernel requires t > 0");
  }
  const double a = params.alpha();
  const double z = params.omega() * std::pow(t, a);
  const SeriesResult e = prabhakar_eval(a, params.beta(), params.gamma(), Complex(z, 0.0));
  return std::pow(t, params.beta() - 1.0) * e.value.real();
}

Complex kernel_laplace(const PrabhakarParams& params, Complex s) {
  if (s == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::DomainError, "Laplace transform is singular at s = 0");
  }
  const double a = params.alpha();
  const double excess = -params.beta_minus_alpha_gamma();  // alpha*gamma - beta
  if (on_negative_real_axis(s) && (!is_integer(a) || !is_integer(excess))) {
    throw Error(ErrorKind::BranchCut, "s lies on the negative real axis");
  }
  const Complex base = principal_pow(s, a) - params.omega();
  if (base == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::DomainError, "s^alpha = omega is a pole of the transform");
  }
  if (on_negative_real_axis(base) && !is_integer(params.gamma())) {
    throw Error(ErrorKind::BranchCut, "s^alpha - omega lies on the negative real axis");
  }
  return principal_pow(s, excess) / principal_pow(base, params.gamma());
}

double integral_of_power(const PrabhakarParams& params, double nu, double t) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorKind::DomainError, "integral_of_power requires nu >= 0");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::DomainError, "integral_of_power requires t > 0");
  }
  const double a = params.alpha();
  const double b = params.beta() + nu + 1.0;
  const double z = params.omega() * std::pow(t, a);
  const SeriesResult e = prabhakar_eval(a, b, params.gamma(), Complex(z, 0.0));
  return std::tgamma(nu + 1.0) * std::pow(t, nu + params.beta()) * e.value.real();
}

namespace {

// c_0..c_2 for one parameter triple. c_1 is known in closed form; c_2 is
// read off (R - 1 - c_1/x)(x + 1) on a grid of x = alpha s + theta, with
// a few higher inverse-factorial terms absorbed by the fit.
std::vector<double> fit_inverse_factorial(double alpha, double beta, double gamma) {
  const double theta = 1.0 - gamma + beta;
  const double c1 = 0.5 * (1.0 - gamma) * (2.0 * beta - gamma - alpha * gamma);

  constexpr int kPoints = 48;
  constexpr int kBasis = 4;
  const double x_lo = 40.0;
  const double x_hi = 2000.0;
  Eigen::MatrixXd A(kPoints, kBasis);
  Eigen::VectorXd y(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / (kPoints - 1));
    const double s = (x - theta) / alpha;
    const double log_ratio = log_gamma_ratio(s, gamma, 1.0) +
                             log_gamma_ratio(alpha * s, theta, beta) -
                             (1.0 - gamma) * std::log(alpha);
    const double rm1 = std::expm1(log_ratio);
    y(i) = (rm1 * x - c1) * (x + 1.0);
    double b = 1.0;
    for (int j = 0; j < kBasis; ++j) {
      A(i, j) = b;
      b /= (x + 2.0 + j);
    }
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = A * coef - y;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if (!coef.allFinite() || resid.cwiseAbs().maxCoeff() > 1e-6 * scale) {
    throw Error(ErrorKind::FitFailure,
                "inverse factorial fit failed for " + fmt_params(alpha, beta, gamma));
  }
  return {1.0, c1, coef(0)};
}

}  // namespace

std::vector<double> inverse_factorial_leading(double alpha, double beta, double gamma, int K) {
  if (K < 0 || K > kMaxInverseFactorialOrder) {
    throw Error(ErrorKind::InvalidParam,
                "inverse factorial order must be in [0, " +
                    std::to_string(kMaxInverseFactorialOrder) + "]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::InvalidParam, "inverse factorial expansion requires 0 < alpha <= 1");
  }

  using Key = std::array<double, 3>;
  static std::map<Key, std::vector<double>> cache;
  static std::shared_mutex mutex;
  const Key key{alpha, beta, gamma};
  std::vector<double> full;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) full = it->second;
  }
  if (full.empty()) {
    full = fit_inverse_factorial(alpha, beta, gamma);
    std::unique_lock lock(mutex);
    cache.emplace(key, full);
  }
  full.resize(static_cast<std::size_t>(K) + 1);
  return full;
}

}  // namespace prabhakar
