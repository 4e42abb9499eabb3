#pragma once

// Small- and large-time representations of the solution of the scalar
// problem D^g_{a,b,w} y = A y, y(0) = y0.

#include <string>

#include "prabhakar/complex.hpp"
#include "prabhakar/params.hpp"

namespace prabhakar {

struct TransferFunction {
  PrabhakarParams params;
  Complex A;
};

struct ExpansionValue {
  Complex value;
  int terms_used = 0;
  double truncation_estimate = 0.0;  // magnitude of the last term used
  std::string caveat;                // empty unless the result needs a qualifier
};

/// sum_{j=0}^{J} A^j t^(jb) E^{jg}_{a, jb+1}(w t^a) y0, stopped early once the
/// terms are negligible. Throws NotAsymptotic if the terms still grow at
/// j = J, DomainError for t <= 0 or J < 1.
[[nodiscard]] ExpansionValue small_time_series(const PrabhakarParams& params, Complex A,
                                               Complex y0, double t, int J);

/// C(s) = (s^a - w) / (b s^a - (b - a g) w), the residue of the transfer
/// function at a simple root of F(s) = A. Throws DomainError at a zero
/// denominator or numerator.
[[nodiscard]] Complex residue_coefficient(const PrabhakarParams& params, Complex s_bar);

/// [C e^{s t} - sum_{k=1}^{K} t^(-kb) A^(-k) E^{-kg}_{a, 1-kb}(w t^a)] y0 with
/// s the dominant singularity. The tail stops at its smallest term; throws
/// NotAsymptotic if the second term already exceeds the first. For
/// Re s > 0 the caveat notes that only one root enters the residue term.
[[nodiscard]] ExpansionValue large_time_expansion(const PrabhakarParams& params, Complex A,
                                                  Complex y0, double t, int K);

/// H(s) = s^(b-ag-1) (s^a - w)^g / (F(s) - A). Throws DomainError at s = 0 or
/// on a root of F(s) = A.
[[nodiscard]] Complex transfer_function_value(const TransferFunction& tf, Complex s);

}  // namespace prabhakar
