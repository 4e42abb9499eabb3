#pragma once

// Pieces shared by the subcommands and the built-in experiments.

#include <optional>
#include <string>
#include <vector>

#include "cli_io.hpp"
#include "prabhakar/cq_solver.hpp"
#include "prabhakar/stability.hpp"

namespace prabhakar::cli {

inline constexpr int kMaxSteps = 1 << 14;

struct RegionData {
  BoundaryCurve curve;
  std::vector<Complex> eigenvalues;
  std::vector<StabilityVerdict> verdicts;
};

[[nodiscard]] RegionData region_data(const PrabhakarParams& params, int samples, double modulus_cap,
                                     const std::vector<Complex>& eigenvalues, double tol);

/// Column row of the region table, optionally led by one extra column.
[[nodiscard]] std::string region_columns(const std::string& lead = "");
/// Curve rows (theta ascending), conjugate rows, then eigenvalue rows.
[[nodiscard]] std::string region_rows(const RegionData& data, const std::string& lead_value = "");
[[nodiscard]] json region_json(const RegionData& data);
[[nodiscard]] json verdict_json(Complex lambda, const StabilityVerdict& verdict);

/// Jacobian of the Brusselator right-hand side at its equilibrium (1, b/a).
[[nodiscard]] Eigen::MatrixXd brusselator_jacobian(double a, double b);

struct ProblemSpec {
  std::string type;  // linear-scalar, linear-system, brusselator
  Complex A{0.0, 0.0};
  Eigen::MatrixXcd matrix;
  double a = 0.0;
  double b = 0.0;
};

[[nodiscard]] FdeSystem make_system(const ProblemSpec& problem, const State& y0);
[[nodiscard]] json problem_json(const ProblemSpec& problem);

/// Steps N = horizon / h; throws UsageError unless h divides the horizon
/// exactly and 1 <= N <= kMaxSteps.
[[nodiscard]] int step_count(double horizon, double h);

[[nodiscard]] std::string trajectory_csv(const Trajectory& trajectory, bool header,
                                         const std::string& command);
[[nodiscard]] json trajectory_json(const Trajectory& trajectory);
[[nodiscard]] json solver_meta(const Trajectory& trajectory, const CQScheme& scheme,
                               const NewtonOptions& newton);

/// Peak-to-peak of Re y_component over samples with t in [t0, t1].
[[nodiscard]] double window_amplitude(const Trajectory& trajectory, int component, double t0,
                                      double t1);
/// max |y_component| over samples with t in [t0, t1].
[[nodiscard]] double window_max_modulus(const Trajectory& trajectory, int component, double t0,
                                        double t1);

}  // namespace prabhakar::cli
