#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prabhakar/error.hpp"

namespace prabhakar::cli {

RegionData region_data(const PrabhakarParams& params, int samples, double modulus_cap,
                       const std::vector<Complex>& eigenvalues, double tol) {
  if (samples < 2) throw UsageError("--samples must be at least 2");
  if (!(modulus_cap > 0.0)) throw UsageError("--modulus-cap must be positive");
  RegionData data{curve_sample(params, samples, std::nullopt, modulus_cap), eigenvalues, {}};
  for (const Complex& lambda : eigenvalues) data.verdicts.push_back(classify(params, lambda, tol));
  return data;
}

std::string region_columns(const std::string& lead) {
  return (lead.empty() ? "" : lead + ",") + "kind,theta,re,im,arg,verdict,margin\n";
}

std::string region_rows(const RegionData& data, const std::string& lead_value) {
  const std::string lead = lead_value.empty() ? "" : lead_value + ",";
  const BoundaryCurve& c = data.curve;
  const double g = c.params.gamma();
  std::string out;
  // Arg Lambda(theta) = gamma theta + arg_min holds exactly; it is also
  // meaningful at theta = 0 where Lambda itself may vanish
  for (const int sign : {1, -1}) {
    const char* kind = sign > 0 ? "curve" : "conjugate";
    for (std::size_t k = 0; k < c.thetas.size(); ++k) {
      const Complex p = c.points[k];
      out += lead + kind + "," + num(c.thetas[k]) + "," + num(p.real()) + "," +
             num(sign * p.imag() + 0.0) + "," + num(sign * (g * c.thetas[k] + c.arg_min) + 0.0) + ",,\n";
    }
  }
  for (std::size_t k = 0; k < data.eigenvalues.size(); ++k) {
    const Complex l = data.eigenvalues[k];
    const StabilityVerdict& v = data.verdicts[k];
    out += lead + "eigenvalue,," + num(l.real()) + "," + num(l.imag()) + "," + num(std::arg(l)) +
           "," + to_string(v.status) + "," + (v.margin ? num(*v.margin) : "") + "\n";
  }
  return out;
}

json verdict_json(Complex lambda, const StabilityVerdict& verdict) {
  json j = {{"eigenvalue", complex_to_json(lambda)}, {"verdict", to_string(verdict.status)}};
  j["boundary_modulus"] = verdict.boundary_modulus ? json(*verdict.boundary_modulus) : json();
  j["margin"] = verdict.margin ? json(*verdict.margin) : json();
  j["zero_eigenvalue"] = verdict.special_case_zero;
  return j;
}

json region_json(const RegionData& data) {
  const BoundaryCurve& c = data.curve;
  json curve = json::array();
  for (std::size_t k = 0; k < c.thetas.size(); ++k) {
    curve.push_back({{"theta", c.thetas[k]},
                     {"re", c.points[k].real()},
                     {"im", c.points[k].imag()},
                     {"arg", c.params.gamma() * c.thetas[k] + c.arg_min}});
  }
  json eig = json::array();
  for (std::size_t k = 0; k < data.eigenvalues.size(); ++k) {
    eig.push_back(verdict_json(data.eigenvalues[k], data.verdicts[k]));
  }
  return {{"params", params_to_json(c.params)},
          {"arg_min", c.arg_min},
          {"arg_sup", c.arg_sup},
          {"curve", curve},
          {"eigenvalues", eig}};
}

Eigen::MatrixXd brusselator_jacobian(double a, double b) {
  Eigen::MatrixXd J(2, 2);
  J << b - 1.0, a, -b, -a;
  return J;
}

FdeSystem make_system(const ProblemSpec& problem, const State& y0) {
  if (problem.type == "linear-scalar") {
    if (y0.size() != 1) throw UsageError("linear-scalar needs a one-component y0");
    Eigen::MatrixXcd M(1, 1);
    M(0, 0) = problem.A;
    return linear_system(M, y0);
  }
  if (problem.type == "linear-system") {
    if (problem.matrix.rows() != y0.size()) {
      throw UsageError("y0 has " + std::to_string(y0.size()) + " components, matrix has " +
                       std::to_string(problem.matrix.rows()) + " rows");
    }
    return linear_system(problem.matrix, y0);
  }
  if (problem.type == "brusselator") {
    if (y0.size() != 2) throw UsageError("brusselator needs a two-component y0");
    return brusselator_system(problem.a, problem.b, y0);
  }
  throw UsageError("unknown problem type '" + problem.type +
                   "' (expected linear-scalar, linear-system or brusselator)");
}

json problem_json(const ProblemSpec& problem) {
  json j = {{"type", problem.type}};
  if (problem.type == "linear-scalar") {
    j["A"] = complex_to_json(problem.A);
  } else if (problem.type == "linear-system") {
    json rows = json::array();
    for (Eigen::Index i = 0; i < problem.matrix.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < problem.matrix.cols(); ++k) {
        row.push_back(complex_to_json(problem.matrix(i, k)));
      }
      rows.push_back(row);
    }
    j["matrix"] = rows;
  } else {
    j["a"] = problem.a;
    j["b"] = problem.b;
  }
  return j;
}

int step_count(double horizon, double h) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("horizon must be positive");
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("h must be positive");
  const double ratio = horizon / h;
  if (ratio > kMaxSteps + 0.5) {
    throw UsageError("horizon / h = " + num(ratio) + " exceeds the step cap " +
                     std::to_string(kMaxSteps));
  }
  const auto N = static_cast<int>(std::llround(ratio));
  if (N < 1 || std::abs(N * h - horizon) > 1e-12 * horizon) {
    throw UsageError("h = " + num(h) + " does not divide the horizon " + num(horizon) +
                     " exactly");
  }
  return N;
}

namespace {

std::vector<bool> complex_components(const Trajectory& tr) {
  const auto dim = static_cast<std::size_t>(tr.states.empty() ? 0 : tr.states.front().size());
  std::vector<bool> cplx(dim, false);
  for (const State& y : tr.states) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (y(static_cast<Eigen::Index>(i)).imag() != 0.0) cplx[i] = true;
    }
  }
  return cplx;
}

}  // namespace

std::string trajectory_csv(const Trajectory& tr, bool header, const std::string& command) {
  const std::vector<bool> cplx = complex_components(tr);
  std::string out;
  if (header) out += std::string("# ") + kGenerator + " " + command + "\n";
  out += "t";
  for (std::size_t i = 0; i < cplx.size(); ++i) {
    const std::string name = "y" + std::to_string(i + 1);
    out += cplx[i] ? "," + name + "_re," + name + "_im" : "," + name;
  }
  out += "\n";
  for (std::size_t n = 0; n < tr.times.size(); ++n) {
    out += num(tr.times[n]);
    for (std::size_t i = 0; i < cplx.size(); ++i) {
      const Complex y = tr.states[n](static_cast<Eigen::Index>(i));
      out += "," + num(y.real());
      if (cplx[i]) out += "," + num(y.imag());
    }
    out += "\n";
  }
  return out;
}

json trajectory_json(const Trajectory& tr) {
  const std::vector<bool> cplx = complex_components(tr);
  json ys = json::array();
  for (const State& y : tr.states) {
    json row = json::array();
    for (std::size_t i = 0; i < cplx.size(); ++i) {
      const Complex v = y(static_cast<Eigen::Index>(i));
      row.push_back(cplx[i] ? complex_to_json(v) : json(v.real()));
    }
    ys.push_back(row);
  }
  return {{"t", tr.times}, {"y", ys}};
}

json solver_meta(const Trajectory& tr, const CQScheme& scheme, const NewtonOptions& newton) {
  const auto& d = tr.meta;
  const int total = std::accumulate(d.newton_iterations.begin(), d.newton_iterations.end(), 0);
  const int most =
      d.newton_iterations.empty() ? 0 : *std::max_element(d.newton_iterations.begin(), d.newton_iterations.end());
  const double worst = d.residuals.empty() ? 0.0 : *std::max_element(d.residuals.begin(), d.residuals.end());
  return {{"params", params_to_json(scheme.params())},
          {"h", scheme.h()},
          {"steps", scheme.steps()},
          {"horizon", scheme.h() * scheme.steps()},
          {"exactness_exponents", exactness_exponents(scheme.params().beta())},
          {"starting_block", d.starting_block},
          {"newton",
           {{"tol", newton.tol},
            {"max_iter", newton.max_iter},
            {"total_iterations", total},
            {"max_iterations_per_step", most},
            {"max_residual", worst},
            {"damped_steps", d.damped_steps}}}};
}

double window_amplitude(const Trajectory& tr, int component, double t0, double t1) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t n = 0; n < tr.times.size(); ++n) {
    if (tr.times[n] < t0 || tr.times[n] > t1) continue;
    const double v = tr.states[n](component).real();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi >= lo)) throw UsageError("empty time window");
  return hi - lo;
}

double window_max_modulus(const Trajectory& tr, int component, double t0, double t1) {
  double hi = -1.0;
  for (std::size_t n = 0; n < tr.times.size(); ++n) {
    if (tr.times[n] < t0 || tr.times[n] > t1) continue;
    hi = std::max(hi, std::abs(tr.states[n](component)));
  }
  if (hi < 0.0) throw UsageError("empty time window");
  return hi;
}

}  // namespace prabhakar::cli
