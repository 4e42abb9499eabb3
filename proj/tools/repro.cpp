// Built-in configurations for the published experiments: region sweeps, the
// scalar test problems A1..A3 near the boundary, and the Brusselator.

#include <filesystem>
#include <functional>
#include <map>

#include "cli.hpp"
#include "cli_io.hpp"
#include "commands.hpp"
#include "prabhakar/asymptotics.hpp"
#include "prabhakar/error.hpp"
#include "prabhakar/spectra.hpp"
#include "prabhakar/stability.hpp"

namespace prabhakar::cli {

namespace {

const PrabhakarParams kScalarParams{0.8, 0.9, 0.8, -1.0};
const Complex kA1{0.866, 1.171};
const Complex kA2{0.901, 1.161};
const Complex kA3{0.936, 1.151};
constexpr double kPointTol = 5e-3;  // A1..A3 are given to three decimals
constexpr int kTailTerms = 40;  // cap only; optimal truncation stops near 11 at t = 50
constexpr double kScalarHorizon = 50.0;
constexpr int kScalarSteps = 1 << 13;

constexpr double kBrussA = 10.0;
constexpr double kBrussB = 14.0;
constexpr double kBrussHorizon = 200.0;
constexpr int kBrussSteps = 1 << 14;
const PrabhakarParams kBrussParams{0.9, 0.95, 0.8, -4.0};

constexpr int kSamples = 200;
constexpr double kModulusCap = 1e3;

struct Sink {
  std::filesystem::path dir;
  bool header;
  std::ostream& out;

  void write(const std::string& name, const std::string& text) const {
    const auto path = dir / name;
    emit(path.string(), text, out);
    out << "wrote " << path.string() << "\n";
  }
  void summary(const std::string& id, json j) const {
    if (header) j["generator"] = kGenerator;
    j["id"] = id;
    write(id + ".summary.json", json_text(j));
  }
  [[nodiscard]] std::string stamp(const std::string& id) const {
    return header ? std::string("# ") + kGenerator + " repro " + id + "\n" : "";
  }
};

json verdicts_json(const PrabhakarParams& params, const std::vector<Complex>& eig, double tol) {
  json rows = json::array();
  for (const Complex& l : eig) {
    const StabilityVerdict v = classify(params, l, tol);
    json row = verdict_json(l, v);
    row["relative_margin"] = v.margin ? json(*v.margin / std::abs(l)) : json();
    rows.push_back(row);
  }
  return rows;
}

json sweep(const Sink& sink, const std::string& id, const std::string& lead,
           const std::vector<std::pair<double, PrabhakarParams>>& cases,
           const std::vector<Complex>& eig, double tol) {
  std::string csv = sink.stamp(id) + region_columns(lead);
  json rows = json::array();
  for (const auto& [value, params] : cases) {
    const RegionData data = region_data(params, kSamples, kModulusCap, eig, tol);
    csv += region_rows(data, num(value));
    json row = {{lead, value},
                {"params", params_to_json(params)},
                {"arg_min", data.curve.arg_min},
                {"arg_sup", data.curve.arg_sup},
                {"boundary_through_origin", params.beta_minus_alpha_gamma() > 0.0}};
    if (!eig.empty()) row["eigenvalues"] = verdicts_json(params, eig, tol);
    rows.push_back(row);
  }
  sink.write(id + ".csv", csv);
  return rows;
}

void region_gamma(const Sink& sink) {
  const std::string id = "region-gamma";
  std::vector<std::pair<double, PrabhakarParams>> cases;
  // the last value gives beta = alpha gamma
  for (const double g : {0.2, 0.5, 0.8, 1.125}) cases.push_back({g, {0.8, 0.9, g, -1.0}});
  sink.summary(id, {{"curves", sweep(sink, id, "gamma", cases, {}, 0.0)}});
}

void region_omega(const Sink& sink) {
  const std::string id = "region-omega";
  std::vector<std::pair<double, PrabhakarParams>> cases;
  for (const double w : {-0.5, -1.0, -2.0, -4.0}) cases.push_back({w, {0.8, 0.9, 0.8, w}});
  sink.summary(id, {{"curves", sweep(sink, id, "omega", cases, {}, 0.0)}});
}

void a_points(const Sink& sink) {
  const std::string id = "a-points";
  const RegionData data =
      region_data(kScalarParams, kSamples, kModulusCap, {kA1, kA2, kA3}, kPointTol);
  sink.write(id + ".csv", sink.stamp(id) + region_columns() + region_rows(data));
  sink.summary(id, {{"params", params_to_json(kScalarParams)},
                    {"tol", kPointTol},
                    {"eigenvalues", verdicts_json(kScalarParams, {kA1, kA2, kA3}, kPointTol)}});
}

void scalar_solve(const Sink& sink, const std::string& id, Complex A) {
  const double h = kScalarHorizon / kScalarSteps;
  const State y0 = State::Constant(1, Complex(1.0, 0.0));
  Eigen::MatrixXcd M(1, 1);
  M(0, 0) = A;
  const NewtonOptions newton;
  const CQScheme scheme = CQScheme::build(kScalarParams, h, kScalarSteps);
  const Trajectory tr = solve(linear_system(M, y0), scheme, newton);
  sink.write(id + ".csv", trajectory_csv(tr, sink.header, "repro " + id));

  const StabilityVerdict v = classify(kScalarParams, A, kPointTol);
  json j = {{"params", params_to_json(kScalarParams)},
            {"A", complex_to_json(A)},
            {"y0", 1.0},
            {"h", h},
            {"horizon", kScalarHorizon},
            {"verdict", to_string(v.status)},
            {"relative_margin", v.margin ? json(*v.margin / std::abs(A)) : json()}};
  json windows = json::array();
  for (const auto& [t0, t1] : {std::pair{0.0, 10.0}, {20.0, 30.0}, {40.0, 50.0}}) {
    windows.push_back({{"t0", t0},
                       {"t1", t1},
                       {"peak_to_peak_re", window_amplitude(tr, 0, t0, t1)},
                       {"max_modulus", window_max_modulus(tr, 0, t0, t1)}});
  }
  j["windows"] = windows;
  j["y_final"] = complex_to_json(tr.states.back()(0));
  const Complex s_bar = dominant_singularity(kScalarParams, A);
  j["dominant_singularity"] = complex_to_json(s_bar);
  try {
    const ExpansionValue e = large_time_expansion(kScalarParams, A, 1.0, kScalarHorizon, kTailTerms);
    j["large_time_expansion"] = {{"value", complex_to_json(e.value)},
                                 {"terms_used", e.terms_used},
                                 {"caveat", e.caveat}};
  } catch (const Error& e) {
    j["large_time_expansion"] = {{"error", e.what()}};
  }
  j["solver"] = solver_meta(tr, scheme, newton);
  sink.summary(id, j);
}

std::vector<Complex> bruss_eigenvalues() {
  const auto ev = eigenvalues_2x2(brusselator_jacobian(kBrussA, kBrussB));
  return {ev[0], ev[1]};
}

void brusselator_region(const Sink& sink) {
  const std::string id = "brusselator-region";
  const std::vector<Complex> eig = bruss_eigenvalues();
  std::vector<std::pair<double, PrabhakarParams>> cases;
  for (const double w : {-4.0, -0.5}) cases.push_back({w, kBrussParams.with_omega(w)});
  json j = {{"a", kBrussA}, {"b", kBrussB}, {"eigenvalues", json::array()}};
  for (const Complex& l : eig) j["eigenvalues"].push_back(complex_to_json(l));
  j["regions"] = sweep(sink, id, "omega", cases, eig, 1e-9);
  sink.summary(id, j);
}

void brusselator_solve(const Sink& sink, const std::string& id, const PrabhakarParams& params,
                       json extra = json::object()) {
  const double h = kBrussHorizon / kBrussSteps;
  State y0(2);
  y0 << 1.1, 1.3;
  const NewtonOptions newton;
  const CQScheme scheme = CQScheme::build(params, h, kBrussSteps);
  const Trajectory tr = solve(brusselator_system(kBrussA, kBrussB, y0), scheme, newton);
  sink.write(id + ".csv", trajectory_csv(tr, sink.header, "repro " + id));

  const std::vector<Complex> eig = bruss_eigenvalues();
  const SpectrumVerdict sv = classify_spectrum(params, eig);
  const double T = kBrussHorizon;
  const State& yT = tr.states.back();
  const double early = window_amplitude(tr, 0, T / 2, 3 * T / 4);
  const double late = window_amplitude(tr, 0, 3 * T / 4, T);
  json j = {{"params", params_to_json(params)},
            {"a", kBrussA},
            {"b", kBrussB},
            {"y0", {1.1, 1.3}},
            {"h", h},
            {"horizon", T},
            {"equilibrium", {1.0, kBrussB / kBrussA}},
            {"verdict", to_string(sv.overall.status)},
            {"final_state", {yT(0).real(), yT(1).real()}},
            {"distance_to_equilibrium",
             std::hypot(yT(0).real() - 1.0, yT(1).real() - kBrussB / kBrussA)},
            {"x_amplitude_first_half_window", early},
            {"x_amplitude_second_half_window", late},
            {"x_amplitude_ratio", late / early},
            {"x_amplitude_not_decreasing", late >= 0.99 * early}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  j["solver"] = solver_meta(tr, scheme, newton);
  sink.summary(id, j);
}

void omega_star(const Sink& sink) {
  const std::string id = "omega-star";
  const std::vector<Complex> eig = bruss_eigenvalues();
  const Complex lambda = eig[0].imag() > 0.0 ? eig[0] : eig[1];
  const CriticalOmega c = critical_omega(0.9, 0.95, 0.8, lambda);
  const CriticalOmega rounded = critical_omega(0.9, 0.95, 0.8, Complex(1.5, 2.7839));
  const PrabhakarParams params = kBrussParams.with_omega(c.omega_star);

  const RegionData data = region_data(params, kSamples, kModulusCap, eig, 1e-9);
  sink.write(id + "-region.csv", sink.stamp(id) + region_columns() + region_rows(data));
  brusselator_solve(sink, id, params,
                    {{"lambda", complex_to_json(lambda)},
                     {"omega_star", c.omega_star},
                     {"theta_star", c.theta_star},
                     {"omega_star_from_rounded_lambda", rounded.omega_star},
                     {"eigenvalues_at_omega_star", verdicts_json(params, eig, 1e-9)}});
}

}  // namespace

void run_repro(const std::string& id, const std::string& dir, bool header, std::ostream& out) {
  const std::map<std::string, std::function<void(const Sink&)>> table = {
      {"region-gamma", region_gamma},
      {"region-omega", region_omega},
      {"a-points", a_points},
      {"a1-stable", [](const Sink& s) { scalar_solve(s, "a1-stable", kA1); }},
      {"a2-border", [](const Sink& s) { scalar_solve(s, "a2-border", kA2); }},
      {"a3-unstable", [](const Sink& s) { scalar_solve(s, "a3-unstable", kA3); }},
      {"brusselator-region", brusselator_region},
      {"brusselator-stable",
       [](const Sink& s) { brusselator_solve(s, "brusselator-stable", kBrussParams); }},
      {"brusselator-unstable",
       [](const Sink& s) {
         brusselator_solve(s, "brusselator-unstable", kBrussParams.with_omega(-0.5));
       }},
      {"omega-star", omega_star},
  };
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create '" + dir + "': " + ec.message());
  const Sink sink{dir, header, out};
  if (id == "all") {
    for (const auto& [name, fn] : table) fn(sink);
    return;
  }
  const auto it = table.find(id);
  if (it == table.end()) throw UsageError("unknown experiment '" + id + "'");
  it->second(sink);
}

}  // namespace prabhakar::cli
