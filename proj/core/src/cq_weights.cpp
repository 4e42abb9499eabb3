#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "prabhakar/cq_solver.hpp"
#include "prabhakar/error.hpp"
#include "prabhakar/special_fn.hpp"

namespace prabhakar {

namespace {

int next_power_of_two(long n) {
  int k = 1;
  while (k < n) k *= 2;
  return k;
}

}  // namespace

Complex generator_delta(Complex xi) {
  if (xi == Complex(-1.0, 0.0)) throw Error(ErrorKind::DomainError, "delta has a pole at xi = -1");
  return 2.0 * (1.0 - xi) / (1.0 + xi);
}

std::vector<double> conv_weights(const PrabhakarParams& params, double h, int N,
                                 const WeightOptions& options) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidParam, "h must be positive");
  if (N < 0) throw Error(ErrorKind::InvalidParam, "N must be non-negative");
  if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
    throw Error(ErrorKind::InvalidParam, "epsilon must lie in (0, 1)");
  }
  const int K = options.nodes > 0 ? options.nodes : next_power_of_two(16L * (N + 1));
  if (K < 2 * (N + 1)) {
    throw Error(ErrorKind::InvalidParam, "at least 2(N+1) contour nodes are required");
  }

  // aliasing from c_{n+K} is damped by rho^K = epsilon, while rounding in the
  // Fourier sum is amplified by rho^(-N) <= epsilon^(-1/16)
  const double rho = std::pow(options.epsilon, 1.0 / K);
  const double scale = std::pow(h, -params.beta());
  std::vector<Complex> samples(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const Complex xi = std::polar(rho, 2.0 * std::numbers::pi * k / K);
    const Complex G = scale * kernel_laplace(params, generator_delta(xi) / h);
    if (!std::isfinite(G.real()) || !std::isfinite(G.imag())) {
      throw Error(ErrorKind::ContourSingularity,
                  "kernel transform is singular inside the weight contour");
    }
    samples[static_cast<std::size_t>(k)] = G;
  }

  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, samples);

  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  const double log_rho = std::log(rho);
  for (int n = 0; n <= N; ++n) {
    c[static_cast<std::size_t>(n)] =
        spectrum[static_cast<std::size_t>(n)].real() * std::exp(-n * log_rho) / K;
  }
  return c;
}

std::vector<double> exactness_exponents(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error(ErrorKind::InvalidParam, "beta must lie in (0, 1]");
  }
  std::vector<double> nu;
  for (int j = 0; j * beta < 1.0 - 1e-12; ++j) nu.push_back(j * beta);
  return nu;
}

Eigen::VectorXd starting_weights_row(const PrabhakarParams& params, double h,
                                     const std::vector<double>& c, int n) {
  const std::vector<double> nu = exactness_exponents(params.beta());
  const int m = static_cast<int>(nu.size());
  if (n < 0 || static_cast<int>(c.size()) < n + 1) {
    throw Error(ErrorKind::InvalidParam, "starting weights need c_0..c_n");
  }
  if (n == 0) return Eigen::VectorXd::Zero(m);

  // rows divided by h^nu: the matrix becomes j^nu with 0^0 = 1
  Eigen::MatrixXd V(m, m);
  Eigen::VectorXd rhs(m);
  const double b = params.beta();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) V(i, j) = (j == 0 && nu[i] == 0.0) ? 1.0 : std::pow(j, nu[i]);
    double lag = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double p = (j == 0 && nu[i] == 0.0) ? 1.0 : std::pow(j, nu[i]);
      lag += c[static_cast<std::size_t>(n - j)] * p;
    }
    const double exact = integral_of_power(params, nu[i], n * h) / std::pow(h, b + nu[i]);
    rhs(i) = exact - lag;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(V);
  const Eigen::VectorXd w = lu.solve(rhs);
  const double resid = (V * w - rhs).norm();
  if (!w.allFinite() || resid > 1e-8 * std::max(1.0, rhs.norm())) {
    const double cond = V.norm() * V.inverse().norm();
    throw Error(ErrorKind::IllConditioned,
                "starting-weight system residual " + std::to_string(resid) +
                    " (condition estimate " + std::to_string(cond) + ")");
  }
  return w;
}

CQScheme::CQScheme(PrabhakarParams params, double h, int N)
    : params_(params), h_(h), N_(N), h_beta_(std::pow(h, params.beta())) {}

CQScheme CQScheme::build(const PrabhakarParams& params, double h, int N,
                         const WeightOptions& options) {
  CQScheme scheme(params, h, N);
  scheme.c_ = prabhakar::conv_weights(params, h, N, options);
  const int m = static_cast<int>(exactness_exponents(params.beta()).size());
  scheme.s_ = m - 1;
  scheme.w_ = Eigen::MatrixXd::Zero(N + 1, m);
  for (int n = 1; n <= N; ++n) {
    scheme.w_.row(n) = starting_weights_row(params, h, scheme.c_, n).transpose();
  }
  return scheme;
}

double quadrature(const CQScheme& scheme, const std::vector<double>& g, int n) {
  if (n < 0 || n > scheme.steps()) {
    throw Error(ErrorKind::OutOfRange, "step index outside the scheme");
  }
  if (static_cast<int>(g.size()) < std::max(n, scheme.s()) + 1) {
    throw Error(ErrorKind::InvalidParam, "not enough samples for the quadrature");
  }
  const auto& c = scheme.conv_weights();
  double sum = 0.0;
  for (int j = 0; j <= scheme.s(); ++j) sum += scheme.starting_weights()(n, j) * g[j];
  for (int j = 0; j <= n; ++j) sum += c[static_cast<std::size_t>(n - j)] * g[j];
  return scheme.h_beta() * sum;
}

}  // namespace prabhakar
