#pragma once

// Trapezoidal convolution quadrature for the Volterra form of
//   D^g_{a,b,w} y = f(t, y),  y(0) = y0,
// i.e. y(t) = y0 + int_0^t e^g_{a,b}(t - tau; w) f(tau, y(tau)) dtau, on the
// grid t_n = n h:
//   y_n = y0 + h^b sum_{j<=s} w_{n,j} f_j + h^b sum_{j<=n} c_{n-j} f_j.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "prabhakar/complex.hpp"
#include "prabhakar/params.hpp"

namespace prabhakar {

using State = Eigen::VectorXcd;
using JacobianMatrix = Eigen::MatrixXcd;

struct FdeSystem {
  int dim = 1;
  std::function<State(double, const State&)> rhs;
  /// Optional; forward differences are used when empty.
  std::function<JacobianMatrix(double, const State&)> jacobian;
  State y0;
};

/// delta(xi) = 2 (1 - xi) / (1 + xi). Throws DomainError at xi = -1.
[[nodiscard]] Complex generator_delta(Complex xi);

struct WeightOptions {
  double epsilon = 1e-16;  // contour radius rho = epsilon^(1/K), K = nodes
  int nodes = 0;           // 0: next power of two >= 16 (N + 1)
};

/// c_0..c_N: Taylor coefficients of h^(-b) K(delta(xi)/h), K the kernel
/// Laplace transform, from a discrete Fourier sum on |xi| = rho. Throws
/// InvalidParam for h <= 0, N < 0 or nodes < 2 (N + 1); ContourSingularity
/// if the transform is not finite on the circle.
[[nodiscard]] std::vector<double> conv_weights(const PrabhakarParams& params, double h, int N,
                                               const WeightOptions& options = {});

/// {0, b, 2b, ...} restricted to [0, 1).
[[nodiscard]] std::vector<double> exactness_exponents(double beta);

/// Starting weights w_{n,0..s} making the quadrature exact on t^nu for every
/// nu in exactness_exponents(beta). c must hold at least n + 1 weights.
/// Throws IllConditioned if the residual of the solved system exceeds 1e-8.
[[nodiscard]] Eigen::VectorXd starting_weights_row(const PrabhakarParams& params, double h,
                                                   const std::vector<double>& c, int n);

/// Immutable once built; safe to share between concurrent solves.
class CQScheme {
 public:
  [[nodiscard]] static CQScheme build(const PrabhakarParams& params, double h, int N,
                                      const WeightOptions& options = {});

  [[nodiscard]] const PrabhakarParams& params() const noexcept { return params_; }
  [[nodiscard]] double h() const noexcept { return h_; }
  [[nodiscard]] int steps() const noexcept { return N_; }
  [[nodiscard]] int s() const noexcept { return s_; }
  [[nodiscard]] double h_beta() const noexcept { return h_beta_; }
  [[nodiscard]] const std::vector<double>& conv_weights() const noexcept { return c_; }
  /// Row n holds w_{n,0..s}; row 0 is zero.
  [[nodiscard]] const Eigen::MatrixXd& starting_weights() const noexcept { return w_; }

 private:
  CQScheme(PrabhakarParams params, double h, int N);

  PrabhakarParams params_;
  double h_;
  int N_;
  int s_ = 0;
  double h_beta_;
  std::vector<double> c_;
  Eigen::MatrixXd w_;
};

/// h^b (sum_{j<=s} w_{n,j} g_j + sum_{j<=n} c_{n-j} g_j): the scheme's
/// approximation of the Prabhakar integral of g at t_n. g must hold at
/// least max(n, s) + 1 samples.
[[nodiscard]] double quadrature(const CQScheme& scheme, const std::vector<double>& g, int n);

struct NewtonOptions {
  double tol = 1e-12;  // on the step, relative to 1 + |y|
  int max_iter = 30;
};

struct SolverDiagnostics {
  std::vector<int> newton_iterations;  // per step, 0 for the initial value
  std::vector<double> residuals;       // final residual norm per step
  int starting_block = 0;              // steps solved jointly at the start
  int damped_steps = 0;                // steps that needed step halving
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  SolverDiagnostics meta;
};

/// Throws InvalidParam on dimension mismatches, NewtonDivergence when a step
/// fails after 8 step halvings.
[[nodiscard]] Trajectory solve(const FdeSystem& system, const CQScheme& scheme,
                               const NewtonOptions& newton = {});
[[nodiscard]] Trajectory solve(const FdeSystem& system, const PrabhakarParams& params, double h,
                               int N, const NewtonOptions& newton = {});

/// f(x, y) = (1 - (b+1) x + a x^2 y, b x - a x^2 y) with its Jacobian.
/// Throws InvalidParam unless a > 0 and y0 has two components.
[[nodiscard]] FdeSystem brusselator_system(double a, double b, const State& y0);

/// f(t, y) = M y.
[[nodiscard]] FdeSystem linear_system(const Eigen::MatrixXcd& M, const State& y0);

}  // namespace prabhakar
