#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "prabhakar/cq_solver.hpp"
#include "prabhakar/error.hpp"

namespace prabhakar {

namespace {

constexpr int kMaxHalvings = 8;

JacobianMatrix finite_difference_jacobian(const FdeSystem& system, double t, const State& y) {
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  const State f0 = system.rhs(t, y);
  JacobianMatrix J(system.dim, system.dim);
  State yp = y;
  for (int k = 0; k < system.dim; ++k) {
    const double inc = root_eps * (1.0 + std::abs(y(k)));
    yp(k) = y(k) + inc;
    J.col(k) = (system.rhs(t, yp) - f0) / inc;
    yp(k) = y(k);
  }
  return J;
}

JacobianMatrix jacobian_at(const FdeSystem& system, double t, const State& y) {
  return system.jacobian ? system.jacobian(t, y) : finite_difference_jacobian(system, t, y);
}

struct NewtonOutcome {
  int iterations = 0;
  double residual = 0.0;
  bool damped = false;
};

// Newton with step halving on R(Y) = 0; Y is updated in place.
template <typename Residual, typename Jacobian>
NewtonOutcome newton_solve(Residual&& residual, Jacobian&& jacobian, State& Y,
                           const NewtonOptions& opt, int step) {
  NewtonOutcome out;
  State R = residual(Y);
  for (int it = 1; it <= opt.max_iter; ++it) {
    out.iterations = it;
    const double scale = 1.0 + Y.norm();
    if (R.norm() <= 1e-2 * opt.tol * scale) {
      out.residual = R.norm();
      return out;
    }
    const State delta = jacobian(Y).partialPivLu().solve(R);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      State trial = Y - lambda * delta;
      State Rt = residual(trial);
      if (Rt.allFinite() && Rt.norm() < R.norm()) {
        Y = std::move(trial);
        R = std::move(Rt);
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (R.norm() <= opt.tol * scale) break;
      throw Error(ErrorKind::NewtonDivergence,
                  "Newton diverged at step " + std::to_string(step) + " (residual " +
                      std::to_string(R.norm()) + ")");
    }
    out.damped = out.damped || lambda < 1.0;
    if (lambda * delta.norm() <= opt.tol * (1.0 + Y.norm())) break;
    if (it == opt.max_iter) {
      throw Error(ErrorKind::NewtonDivergence,
                  "Newton did not converge at step " + std::to_string(step) + " (residual " +
                      std::to_string(R.norm()) + ")");
    }
  }
  out.residual = R.norm();
  return out;
}

void check_system(const FdeSystem& system) {
  if (system.dim < 1) throw Error(ErrorKind::InvalidParam, "system dimension must be positive");
  if (!system.rhs) throw Error(ErrorKind::InvalidParam, "system has no right-hand side");
  if (system.y0.size() != system.dim) {
    throw Error(ErrorKind::InvalidParam, "y0 has " + std::to_string(system.y0.size()) +
                                             " components, expected " +
                                             std::to_string(system.dim));
  }
  if (!system.y0.allFinite()) throw Error(ErrorKind::InvalidParam, "y0 must be finite");
}

}  // namespace

Trajectory solve(const FdeSystem& system, const CQScheme& scheme, const NewtonOptions& newton) {
  check_system(system);
  if (!(newton.tol > 0.0) || newton.max_iter < 1) {
    throw Error(ErrorKind::InvalidParam, "Newton options need tol > 0 and max_iter >= 1");
  }
  const int N = scheme.steps();
  const int s = scheme.s();
  if (N < s) {
    throw Error(ErrorKind::InvalidParam,
                "at least " + std::to_string(s) + " steps are needed for the starting weights");
  }
  const int d = system.dim;
  const double h = scheme.h();
  const double hb = scheme.h_beta();
  const std::vector<double>& c = scheme.conv_weights();
  const Eigen::MatrixXd& W = scheme.starting_weights();

  // c reversed, so the lag sum at step n is F.leftCols(n) * crev.segment(N - n, n)
  Eigen::VectorXcd crev(N + 1);
  for (int i = 0; i <= N; ++i) crev(i) = c[static_cast<std::size_t>(N - i)];

  Eigen::MatrixXcd F(d, N + 1);
  Trajectory traj;
  traj.times.resize(static_cast<std::size_t>(N) + 1);
  traj.states.resize(static_cast<std::size_t>(N) + 1);
  traj.meta.newton_iterations.assign(static_cast<std::size_t>(N) + 1, 0);
  traj.meta.residuals.assign(static_cast<std::size_t>(N) + 1, 0.0);
  traj.meta.starting_block = s;
  for (int n = 0; n <= N; ++n) traj.times[static_cast<std::size_t>(n)] = n * h;

  const State& y0 = system.y0;
  traj.states[0] = y0;
  F.col(0) = system.rhs(0.0, y0);

  // steps 1..s share the starting-weight unknowns and are solved together
  if (s > 0) {
    auto unpack = [&](const State& Y, int n) { return Y.segment((n - 1) * d, d); };
    auto residual = [&](const State& Y) {
      Eigen::MatrixXcd Fb(d, s + 1);
      Fb.col(0) = F.col(0);
      for (int m = 1; m <= s; ++m) Fb.col(m) = system.rhs(m * h, unpack(Y, m));
      State R(s * d);
      for (int n = 1; n <= s; ++n) {
        State q = State::Zero(d);
        for (int j = 0; j <= s; ++j) q += W(n, j) * Fb.col(j);
        for (int j = 0; j <= n; ++j) q += c[static_cast<std::size_t>(n - j)] * Fb.col(j);
        R.segment((n - 1) * d, d) = unpack(Y, n) - y0 - hb * q;
      }
      return R;
    };
    auto jacobian = [&](const State& Y) {
      JacobianMatrix J = JacobianMatrix::Identity(s * d, s * d);
      for (int m = 1; m <= s; ++m) {
        const JacobianMatrix Jf = jacobian_at(system, m * h, unpack(Y, m));
        for (int n = 1; n <= s; ++n) {
          double coef = W(n, m);
          if (m <= n) coef += c[static_cast<std::size_t>(n - m)];
          J.block((n - 1) * d, (m - 1) * d, d, d) -= hb * coef * Jf;
        }
      }
      return J;
    };
    State Y(s * d);
    for (int n = 1; n <= s; ++n) Y.segment((n - 1) * d, d) = y0;
    const NewtonOutcome out = newton_solve(residual, jacobian, Y, newton, 1);
    for (int n = 1; n <= s; ++n) {
      traj.states[static_cast<std::size_t>(n)] = unpack(Y, n);
      F.col(n) = system.rhs(n * h, traj.states[static_cast<std::size_t>(n)]);
      traj.meta.newton_iterations[static_cast<std::size_t>(n)] = out.iterations;
      traj.meta.residuals[static_cast<std::size_t>(n)] = out.residual;
    }
    if (out.damped) ++traj.meta.damped_steps;
  }

  for (int n = s + 1; n <= N; ++n) {
    const double t = n * h;
    State history = F.leftCols(n) * crev.segment(N - n, n);
    for (int j = 0; j <= s; ++j) history += W(n, j) * F.col(j);
    const State rhs_n = y0 + hb * history;
    const double hc0 = hb * c[0];

    auto residual = [&](const State& y) -> State { return y - hc0 * system.rhs(t, y) - rhs_n; };
    auto jacobian = [&](const State& y) -> JacobianMatrix {
      return JacobianMatrix::Identity(d, d) - hc0 * jacobian_at(system, t, y);
    };
    State y = traj.states[static_cast<std::size_t>(n - 1)];
    const NewtonOutcome out = newton_solve(residual, jacobian, y, newton, n);
    traj.meta.newton_iterations[static_cast<std::size_t>(n)] = out.iterations;
    traj.meta.residuals[static_cast<std::size_t>(n)] = out.residual;
    if (out.damped) ++traj.meta.damped_steps;
    F.col(n) = system.rhs(t, y);
    traj.states[static_cast<std::size_t>(n)] = std::move(y);
  }
  return traj;
}

Trajectory solve(const FdeSystem& system, const PrabhakarParams& params, double h, int N,
                 const NewtonOptions& newton) {
  return solve(system, CQScheme::build(params, h, N), newton);
}

FdeSystem brusselator_system(double a, double b, const State& y0) {
  if (!(a > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidParam, "Brusselator needs a > 0 and finite b");
  }
  if (y0.size() != 2) throw Error(ErrorKind::InvalidParam, "Brusselator state has 2 components");
  FdeSystem sys;
  sys.dim = 2;
  sys.y0 = y0;
  sys.rhs = [a, b](double, const State& y) {
    const Complex x = y(0);
    const Complex v = y(1);
    State f(2);
    f(0) = 1.0 - (b + 1.0) * x + a * x * x * v;
    f(1) = b * x - a * x * x * v;
    return f;
  };
  sys.jacobian = [a, b](double, const State& y) {
    const Complex x = y(0);
    const Complex v = y(1);
    JacobianMatrix J(2, 2);
    J(0, 0) = -(b + 1.0) + 2.0 * a * x * v;
    J(0, 1) = a * x * x;
    J(1, 0) = b - 2.0 * a * x * v;
    J(1, 1) = -a * x * x;
    return J;
  };
  return sys;
}

FdeSystem linear_system(const Eigen::MatrixXcd& M, const State& y0) {
  if (M.rows() != M.cols() || M.rows() != y0.size() || M.rows() == 0) {
    throw Error(ErrorKind::InvalidParam, "linear system matrix must be square and match y0");
  }
  FdeSystem sys;
  sys.dim = static_cast<int>(M.rows());
  sys.y0 = y0;
  sys.rhs = [M](double, const State& y) -> State { return M * y; };
  sys.jacobian = [M](double, const State&) -> JacobianMatrix { return M; };
  return sys;
}

}  // namespace prabhakar
