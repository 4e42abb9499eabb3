#include "prabhakar/asymptotics.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "prabhakar/error.hpp"
#include "prabhakar/special_fn.hpp"
#include "prabhakar/stability.hpp"

namespace prabhakar {

ExpansionValue small_time_series(const PrabhakarParams& params, Complex A, Complex y0, double t,
                                 int J) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::DomainError, "small_time_series requires t > 0");
  }
  if (J < 1) throw Error(ErrorKind::DomainError, "small_time_series requires J >= 1");
  const double a = params.alpha();
  const double b = params.beta();
  const double g = params.gamma();
  const Complex z(params.omega() * std::pow(t, a), 0.0);

  ExpansionValue out;
  Complex Aj_tj(1.0, 0.0);  // A^j t^(jb)
  const Complex At = A * std::pow(t, b);
  double previous = 0.0;
  double last = 0.0;
  int small = 0;
  for (int j = 0; j <= J; ++j) {
    const Complex e = prabhakar_eval(a, j * b + 1.0, j * g, z).value;
    const Complex term = Aj_tj * e * y0;
    out.value += term;
    out.terms_used = j + 1;
    previous = last;
    last = std::abs(term);
    out.truncation_estimate = last;
    if (last <= 1e-17 * std::abs(out.value)) {
      if (++small >= 2) return out;
    } else {
      small = 0;
    }
    Aj_tj *= At;
  }
  if (last > previous && last > 1e-17 * std::abs(out.value)) {
    throw Error(ErrorKind::NotAsymptotic,
                "small-time terms still grow at j = " + std::to_string(J) + " (t = " +
                    std::to_string(t) + ")");
  }
  return out;
}

Complex residue_coefficient(const PrabhakarParams& params, Complex s_bar) {
  if (on_negative_real_axis(s_bar) && !is_integer(params.alpha())) {
    throw Error(ErrorKind::BranchCut, "s lies on the negative real axis");
  }
  const Complex sa = principal_pow(s_bar, params.alpha());
  const Complex num = sa - params.omega();
  const Complex den = params.beta() * sa - params.beta_minus_alpha_gamma() * params.omega();
  if (num == Complex(0.0, 0.0) || den == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::DomainError, "residue coefficient is degenerate at this s");
  }
  return num / den;
}

ExpansionValue large_time_expansion(const PrabhakarParams& params, Complex A, Complex y0,
                                    double t, int K) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::DomainError, "large_time_expansion requires t > 0");
  }
  if (K < 1) throw Error(ErrorKind::DomainError, "large_time_expansion requires K >= 1");
  if (A == Complex(0.0, 0.0)) throw Error(ErrorKind::DomainError, "A must be non-zero");

  // a stable A may have no root of F(s) = A on the principal sheet (real
  // negative A, for one); the solution is then the algebraic tail alone
  std::optional<Complex> s_bar;
  try {
    s_bar = dominant_singularity(params, A);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ValidationFailed || classify(params, A).status != Verdict::Stable) {
      throw;
    }
  }
  const Complex C = s_bar ? residue_coefficient(params, *s_bar) : Complex(0.0, 0.0);
  const double a = params.alpha();
  const double b = params.beta();
  const double g = params.gamma();
  const Complex z(params.omega() * std::pow(t, a), 0.0);

  ExpansionValue out;
  Complex tail(0.0, 0.0);
  Complex factor(1.0, 0.0);  // t^(-kb) A^(-k)
  const Complex step = 1.0 / (A * std::pow(t, b));
  double previous = 0.0;
  for (int k = 1; k <= K; ++k) {
    factor *= step;
    const Complex term = factor * prabhakar_eval(a, 1.0 - k * b, -k * g, z).value;
    const double mag = std::abs(term);
    if (k >= 2 && mag > previous) {
      if (k == 2) {
        throw Error(ErrorKind::NotAsymptotic,
                    "algebraic tail is not decreasing at t = " + std::to_string(t));
      }
      break;
    }
    tail += term;
    out.terms_used = k;
    out.truncation_estimate = mag;
    previous = mag;
  }
  const Complex residue = s_bar ? C * std::exp(*s_bar * t) : Complex(0.0, 0.0);
  out.value = (residue - tail) * y0;
  if (!s_bar) {
    out.caveat = "no root of F(s) = A on the principal sheet; algebraic tail only";
  } else if (s_bar->real() > 0.0) {
    out.caveat = "A lies outside the stability region; only the dominant root enters the "
                 "residue term";
  }
  return out;
}

Complex transfer_function_value(const TransferFunction& tf, Complex s) {
  if (s == Complex(0.0, 0.0)) throw Error(ErrorKind::DomainError, "H is singular at s = 0");
  const Complex F = characteristic_value(tf.params, s);
  const Complex den = s * (F - tf.A);
  if (den == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::DomainError, "s is a root of F(s) = A");
  }
  return F / den;
}

}  // namespace prabhakar
