#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "prabhakar/error.hpp"
#include "prabhakar/stability.hpp"

namespace prabhakar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIndent = 1e-8;
constexpr int kInitialIntervals = 64;
constexpr int kMaxDepth = 48;
constexpr long kMaxEvaluations = 400000;

using Path = std::function<Complex(double)>;

class ArgumentTracker {
 public:
  ArgumentTracker(const PrabhakarParams& params, Complex lambda)
      : params_(params), lambda_(lambda) {}

  // Change of Arg(F(s) - lambda) along path(t), t in [0, 1].
  double along(const Path& path) {
    double total = 0.0;
    double t0 = 0.0;
    Complex f0 = eval(path(t0));
    for (int i = 1; i <= kInitialIntervals; ++i) {
      const double t1 = static_cast<double>(i) / kInitialIntervals;
      const Complex f1 = eval(path(t1));
      total += refine(path, t0, f0, t1, f1, 0);
      t0 = t1;
      f0 = f1;
    }
    return total;
  }

 private:
  Complex eval(Complex s) {
    if (++evaluations_ > kMaxEvaluations) {
      throw Error(ErrorKind::ContourFailure, "argument-principle evaluation cap exceeded");
    }
    const Complex d = characteristic_value(params_, s) - lambda_;
    if (!(std::abs(d) > 0.0) || !std::isfinite(std::abs(d))) {
      throw Error(ErrorKind::ContourFailure, "characteristic function vanishes on the contour");
    }
    return d;
  }

  // Accepts an interval once it and both halves turn Arg by less than pi/2.
  double refine(const Path& path, double ta, Complex fa, double tb, Complex fb, int depth) {
    const double d = std::arg(fb / fa);
    const double tm = 0.5 * (ta + tb);
    const Complex fm = eval(path(tm));
    const double d1 = std::arg(fm / fa);
    const double d2 = std::arg(fb / fm);
    if (std::abs(d) < kPi / 2 && std::abs(d1) < kPi / 2 && std::abs(d2) < kPi / 2) {
      return d1 + d2;
    }
    if (depth >= kMaxDepth) {
      throw Error(ErrorKind::ContourFailure, "contour refinement depth exceeded");
    }
    return refine(path, ta, fa, tm, fm, depth + 1) + refine(path, tm, fm, tb, fb, depth + 1);
  }

  const PrabhakarParams& params_;
  Complex lambda_;
  long evaluations_ = 0;
};

}  // namespace

int count_unstable_roots(const PrabhakarParams& params, Complex lambda, double margin,
                         double tol) {
  if (!(margin > 0.0)) throw Error(ErrorKind::InvalidParam, "margin must be positive");
  const StabilityVerdict v = classify(params, lambda, tol);
  if (v.status == Verdict::Marginal) {
    throw Error(ErrorKind::CountUndefined, "lambda lies within tol of the boundary curve");
  }
  if (lambda == Complex(0.0, 0.0)) return 0;  // b = a g: F(s) = 0 has no root

  // every root with Re s >= 0 satisfies |s| <= |lambda|^(1/b)
  const double R = std::max(std::pow(std::abs(lambda), 1.0 / params.beta()) * (1.0 + margin),
                            1e3 * kIndent);
  const double log_ratio = std::log(kIndent / R);

  ArgumentTracker tracker(params, lambda);
  double total = 0.0;
  // counter-clockwise: outer arc, imaginary axis downwards with an indentation
  // into the right half-plane around the branch point s = 0
  total += tracker.along([&](double t) { return std::polar(R, kPi * (t - 0.5)); });
  total += tracker.along(
      [&](double t) { return Complex(0.0, R * std::exp(log_ratio * t)); });
  total += tracker.along([&](double t) { return std::polar(kIndent, kPi * (0.5 - t)); });
  total += tracker.along(
      [&](double t) { return Complex(0.0, -kIndent * std::exp(-log_ratio * t)); });

  const double winding = total / (2.0 * kPi);
  const double rounded = std::round(winding);
  if (std::abs(winding - rounded) > 1e-3 || rounded < 0.0) {
    throw Error(ErrorKind::ContourFailure,
                "winding number not integral: " + std::to_string(winding));
  }
  return static_cast<int>(rounded);
}

}  // namespace prabhakar
