#include "cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "cli_io.hpp"
#include "commands.hpp"
#include "prabhakar/error.hpp"
#include "prabhakar/special_fn.hpp"
#include "prabhakar/spectra.hpp"
#include "prabhakar/stability.hpp"

namespace prabhakar::cli {

namespace {

struct OutputArgs {
  std::string path;
  std::string format;
  bool no_header = false;
};

void add_output(CLI::App* cmd, OutputArgs& o, const std::string& default_format) {
  o.format = default_format;
  cmd->add_option("--output", o.path, "Output file (default: standard output)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--no-header", o.no_header, "Omit the version stamp");
}

std::string stamp(const OutputArgs& o, const std::string& command) {
  return o.no_header ? "" : std::string("# ") + kGenerator + " " + command + "\n";
}

void stamp_json(json& j, const OutputArgs& o) {
  if (!o.no_header) j["generator"] = kGenerator;
}

std::vector<Complex> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<Complex> out;
  for (const auto& s : items) out.push_back(parse_complex(s));
  return out;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::optional<double> omega;
  std::optional<double> z;
  double z_im = 0.0;
  bool kernel = false;
  std::optional<double> t;
  double tol = 1e-14;
  bool unrestricted = false;
  OutputArgs out;
};

void add_eval(CLI::App& app, EvalArgs& a) {
  auto* cmd = app.add_subcommand("eval", "Evaluate the Prabhakar function or kernel");
  cmd->add_option("--alpha", a.alpha)->required();
  cmd->add_option("--beta", a.beta)->required();
  cmd->add_option("--gamma", a.gamma)->required();
  cmd->add_option("--omega", a.omega, "Kernel parameter (required with --kernel)");
  cmd->add_option("--z", a.z, "Real part of the argument");
  cmd->add_option("--z-im", a.z_im, "Imaginary part of the argument");
  cmd->add_flag("--kernel", a.kernel, "Evaluate e(t) = t^(b-1) E(w t^a) instead");
  cmd->add_option("--t", a.t, "Time for --kernel");
  cmd->add_option("--tol", a.tol, "Series tolerance")->capture_default_str();
  cmd->add_flag("--unrestricted", a.unrestricted,
                "Skip the complete-monotonicity check on (alpha, beta, gamma)");
  a.out.format = "";
  cmd->add_option("--output", a.out.path, "Output file (default: standard output)");
  cmd->add_option("--format", a.out.format, "csv or json (default: plain text)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-header", a.out.no_header, "Omit the version stamp");
}

void run_eval(const EvalArgs& a, std::ostream& out) {
  std::string text;
  if (a.kernel) {
    if (!a.omega) throw UsageError("--kernel needs --omega");
    if (!a.t) throw UsageError("--kernel needs --t");
    const PrabhakarParams params(a.alpha, a.beta, a.gamma, *a.omega);
    const double v = kernel_e(params, *a.t);
    if (a.out.format == "csv") {
      text = stamp(a.out, "eval") + "t,value\n" + num(*a.t) + "," + num(v) + "\n";
    } else if (a.out.format == "json") {
      json j = {{"params", params_to_json(params)}, {"t", *a.t}, {"value", v}};
      stamp_json(j, a.out);
      text = json_text(j);
    } else {
      text = num(v) + "\n";
    }
    emit(a.out.path, text, out);
    return;
  }

  if (!a.z) throw UsageError("--z is required (or use --kernel)");
  if (!a.unrestricted) {
    // omega only enters the check through omega < 0
    (void)PrabhakarParams(a.alpha, a.beta, a.gamma, a.omega.value_or(-1.0));
  }
  EvalOptions options;
  options.tol = a.tol;
  const SeriesResult r = prabhakar_eval(a.alpha, a.beta, a.gamma, Complex(*a.z, a.z_im), options);
  const double re = r.value.real();
  const double im = r.value.imag();
  if (a.out.format == "csv") {
    text = stamp(a.out, "eval") + "re,im,branch,terms_used,truncation_estimate\n" + num(re) + "," +
           num(im) + "," + to_string(r.branch) + "," + std::to_string(r.terms_used) + "," +
           num(r.truncation_estimate) + "\n";
  } else if (a.out.format == "json") {
    json j = {{"z", complex_to_json(Complex(*a.z, a.z_im))},
              {"value", complex_to_json(r.value)},
              {"branch", to_string(r.branch)},
              {"terms_used", r.terms_used},
              {"truncation_estimate", r.truncation_estimate}};
    stamp_json(j, a.out);
    text = json_text(j);
  } else {
    text = (im == 0.0 ? num(re) : num(re) + " " + num(im)) + "\n" + "branch " +
           to_string(r.branch) + "\n" + "terms_used " + std::to_string(r.terms_used) + "\n" +
           "truncation_estimate " + num(r.truncation_estimate) + "\n";
  }
  emit(a.out.path, text, out);
}

// ---------------------------------------------------------------- region

struct ParamArgs {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double omega = 0.0;
};

void add_params(CLI::App* cmd, ParamArgs& p) {
  cmd->add_option("--alpha", p.alpha)->required();
  cmd->add_option("--beta", p.beta)->required();
  cmd->add_option("--gamma", p.gamma)->required();
  cmd->add_option("--omega", p.omega)->required();
}

struct RegionArgs {
  ParamArgs p;
  int samples = 200;
  double modulus_cap = 1e3;
  std::vector<std::string> eigenvalues;
  double tol = 1e-9;
  OutputArgs out;
};

void add_region(CLI::App& app, RegionArgs& a) {
  auto* cmd = app.add_subcommand("region", "Sample the stability-region boundary");
  add_params(cmd, a.p);
  cmd->add_option("--samples", a.samples, "Curve points")->capture_default_str();
  cmd->add_option("--modulus-cap", a.modulus_cap, "Stop the curve at this |Lambda|")
      ->capture_default_str();
  cmd->add_option("--eigenvalue", a.eigenvalues, "Eigenvalue to classify (repeatable)")
      ->allow_extra_args(false);
  cmd->add_option("--tol", a.tol, "Relative width of the Marginal band")->capture_default_str();
  add_output(cmd, a.out, "csv");
}

void run_region(const RegionArgs& a, std::ostream& out) {
  const PrabhakarParams params(a.p.alpha, a.p.beta, a.p.gamma, a.p.omega);
  const RegionData data =
      region_data(params, a.samples, a.modulus_cap, parse_complex_list(a.eigenvalues), a.tol);
  std::string text;
  if (a.out.format == "json") {
    json j = region_json(data);
    stamp_json(j, a.out);
    text = json_text(j);
  } else {
    text = stamp(a.out, "region") + region_columns() + region_rows(data);
  }
  emit(a.out.path, text, out);
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  ParamArgs p;
  std::string matrix;
  std::vector<std::string> eigenvalues;
  std::string brusselator;
  double tol = 1e-9;
  double margin = 0.1;
  OutputArgs out;
};

void add_classify(CLI::App& app, ClassifyArgs& a) {
  auto* cmd = app.add_subcommand("classify", "Classify a matrix or a list of eigenvalues");
  add_params(cmd, a.p);
  auto* m = cmd->add_option("--matrix", a.matrix, "Rows separated by ';', e.g. \"-1 0; 0 -2\"");
  auto* e = cmd->add_option("--eigenvalue", a.eigenvalues, "Eigenvalue (repeatable)")
                ->allow_extra_args(false);
  auto* b = cmd->add_option("--brusselator", a.brusselator,
                            "a,b: Jacobian of the Brusselator at its equilibrium");
  m->excludes(e)->excludes(b);
  e->excludes(b);
  cmd->add_option("--tol", a.tol, "Relative width of the Marginal band")->capture_default_str();
  cmd->add_option("--margin", a.margin, "Relative enlargement of the root-count contour")
      ->capture_default_str();
  add_output(cmd, a.out, "json");
}

std::vector<Complex> matrix_eigenvalues(const Eigen::MatrixXcd& M) {
  if (M.imag().isZero(0.0)) {
    const Eigen::MatrixXd R = M.real();
    if (R.rows() == 2) {
      const auto ev = eigenvalues_2x2(R);
      return {ev[0], ev[1]};
    }
    return eigenvalues(R);
  }
  return eigenvalues(M);
}

void run_classify(const ClassifyArgs& a, std::ostream& out) {
  const PrabhakarParams params(a.p.alpha, a.p.beta, a.p.gamma, a.p.omega);
  json report = {{"params", params_to_json(params)}, {"tol", a.tol}};
  std::vector<Complex> eig;
  if (!a.matrix.empty()) {
    eig = matrix_eigenvalues(parse_matrix(a.matrix));
    report["source"] = "matrix";
  } else if (!a.brusselator.empty()) {
    const Complex ab = parse_complex(a.brusselator);
    if (!(ab.real() > 0.0)) throw UsageError("--brusselator needs a > 0");
    const Eigen::MatrixXd J = brusselator_jacobian(ab.real(), ab.imag());
    const auto ev = eigenvalues_2x2(J);
    eig = {ev[0], ev[1]};
    report["source"] = "brusselator";
    report["equilibrium"] = {1.0, ab.imag() / ab.real()};
    report["jacobian"] = {{J(0, 0), J(0, 1)}, {J(1, 0), J(1, 1)}};
  } else if (!a.eigenvalues.empty()) {
    eig = parse_complex_list(a.eigenvalues);
    report["source"] = "eigenvalues";
  } else {
    throw UsageError("one of --matrix, --eigenvalue or --brusselator is required");
  }

  const SpectrumVerdict sv = classify_spectrum(params, eig, a.tol);
  json rows = json::array();
  int unstable = 0;
  std::optional<int> roots = 0;
  std::string csv = stamp(a.out, "classify") + "kind,re,im,verdict,margin,unstable_roots\n";
  for (std::size_t k = 0; k < eig.size(); ++k) {
    const StabilityVerdict& v = sv.per_eigenvalue[k];
    json row = verdict_json(eig[k], v);
    std::optional<int> n;
    if (v.status != Verdict::Marginal) n = count_unstable_roots(params, eig[k], a.margin, a.tol);
    row["unstable_roots"] = n ? json(*n) : json();
    if (v.status == Verdict::Unstable) ++unstable;
    roots = (roots && n) ? std::optional<int>(*roots + *n) : std::nullopt;
    rows.push_back(row);
    csv += "eigenvalue," + num(eig[k].real()) + "," + num(eig[k].imag()) + "," +
           to_string(v.status) + "," + (v.margin ? num(*v.margin) : "") + "," +
           (n ? std::to_string(*n) : "") + "\n";
  }
  report["eigenvalues"] = rows;
  report["overall"] = to_string(sv.overall.status);
  // eigenvalues outside the region counted with algebraic multiplicity, and
  // the same number from the argument principle (null if any is Marginal)
  report["unstable_count"] = unstable;
  report["argument_principle_count"] = roots ? json(*roots) : json();
  csv += "overall,,," + std::string(to_string(sv.overall.status)) + ",," +
         (roots ? std::to_string(*roots) : "") + "\n";

  if (a.out.format == "csv") {
    emit(a.out.path, csv, out);
  } else {
    stamp_json(report, a.out);
    emit(a.out.path, json_text(report), out);
  }
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string config;
  std::optional<double> alpha, beta, gamma, omega, h, horizon;
  std::optional<std::string> problem, A, matrix, brusselator, y0;
  std::optional<double> newton_tol;
  std::optional<int> newton_max_iter;
  std::string meta;
  OutputArgs out;
  CLI::Option* format_opt = nullptr;
  CLI::Option* output_opt = nullptr;
};

void add_solve(CLI::App& app, SolveArgs& a) {
  auto* cmd = app.add_subcommand("solve", "Integrate a Prabhakar differential system");
  cmd->add_option("--config", a.config, "JSON problem description");
  cmd->add_option("--alpha", a.alpha);
  cmd->add_option("--beta", a.beta);
  cmd->add_option("--gamma", a.gamma);
  cmd->add_option("--omega", a.omega);
  cmd->add_option("--h", a.h, "Step size; must divide the horizon");
  cmd->add_option("--horizon", a.horizon, "Final time");
  cmd->add_option("--problem", a.problem)
      ->check(CLI::IsMember({"linear-scalar", "linear-system", "brusselator"}));
  cmd->add_option("--A", a.A, "Coefficient of the linear scalar problem");
  cmd->add_option("--matrix", a.matrix, "Matrix of the linear system, rows separated by ';'");
  cmd->add_option("--brusselator", a.brusselator, "a,b");
  cmd->add_option("--y0", a.y0, "Initial state, components separated by ';'");
  cmd->add_option("--tol", a.newton_tol, "Newton tolerance");
  cmd->add_option("--max-iter", a.newton_max_iter, "Newton iterations per step");
  cmd->add_option("--meta", a.meta, "Diagnostics file (default: <output>.meta.json)");
  a.out.format = "csv";
  a.output_opt = cmd->add_option("--output", a.out.path, "Output file (default: standard output)");
  a.format_opt = cmd->add_option("--format", a.out.format, "Output format")
                     ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-header", a.out.no_header, "Omit the version stamp");
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
}

double need(const std::optional<double>& flag, const json& cfg, const char* key,
            const char* what) {
  if (flag) return *flag;
  if (cfg.contains(key) && cfg[key].is_number()) return cfg[key].get<double>();
  throw UsageError(std::string("missing ") + what);
}

Eigen::MatrixXcd matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw UsageError("matrix must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw UsageError("matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) M(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return M;
}

void run_solve(SolveArgs a, std::ostream& out) {
  const json cfg = a.config.empty() ? json::object() : read_config(a.config);
  const json none = json::object();
  const json& pc = cfg.contains("params") ? cfg["params"] : none;
  const PrabhakarParams params(need(a.alpha, pc, "alpha", "alpha"), need(a.beta, pc, "beta", "beta"),
                               need(a.gamma, pc, "gamma", "gamma"),
                               need(a.omega, pc, "omega", "omega"));

  const json& pr = cfg.contains("problem") ? cfg["problem"] : none;
  ProblemSpec problem;
  if (a.problem) {
    problem.type = *a.problem;
  } else if (pr.contains("type")) {
    problem.type = pr["type"].get<std::string>();
  } else if (a.A) {
    problem.type = "linear-scalar";
  } else if (a.matrix) {
    problem.type = "linear-system";
  } else if (a.brusselator) {
    problem.type = "brusselator";
  } else {
    throw UsageError("missing problem type");
  }
  if (problem.type == "linear-scalar") {
    if (a.A) problem.A = parse_complex(*a.A);
    else if (pr.contains("A")) problem.A = complex_from_json(pr["A"]);
    else throw UsageError("linear-scalar needs A");
  } else if (problem.type == "linear-system") {
    if (a.matrix) problem.matrix = parse_matrix(*a.matrix);
    else if (pr.contains("matrix")) problem.matrix = matrix_from_json(pr["matrix"]);
    else throw UsageError("linear-system needs a matrix");
  } else if (problem.type == "brusselator") {
    if (a.brusselator) {
      const Complex ab = parse_complex(*a.brusselator);
      problem.a = ab.real();
      problem.b = ab.imag();
    } else if (pr.contains("a") && pr.contains("b")) {
      problem.a = pr["a"].get<double>();
      problem.b = pr["b"].get<double>();
    } else {
      throw UsageError("brusselator needs a and b");
    }
  }

  State y0;
  if (a.y0) {
    y0 = parse_vector(*a.y0);
  } else if (cfg.contains("y0")) {
    const json& v = cfg["y0"];
    if (v.is_number()) {
      y0 = State::Constant(1, Complex(v.get<double>(), 0.0));
    } else if (v.is_array() && !v.empty()) {
      y0.resize(static_cast<Eigen::Index>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) y0(static_cast<Eigen::Index>(i)) = complex_from_json(v[i]);
    } else {
      throw UsageError("y0 must be a number or a non-empty array");
    }
  } else {
    throw UsageError("missing y0");
  }

  const double horizon = need(a.horizon, cfg, "horizon", "horizon");
  const double h = need(a.h, cfg, "h", "step size h");
  const int N = step_count(horizon, h);

  NewtonOptions newton;
  if (cfg.contains("newton")) {
    newton.tol = cfg["newton"].value("tol", newton.tol);
    newton.max_iter = cfg["newton"].value("max_iter", newton.max_iter);
  }
  if (a.newton_tol) newton.tol = *a.newton_tol;
  if (a.newton_max_iter) newton.max_iter = *a.newton_max_iter;

  if (cfg.contains("output")) {
    const json& oc = cfg["output"];
    if (a.output_opt->count() == 0 && oc.contains("path")) a.out.path = oc["path"].get<std::string>();
    if (a.format_opt->count() == 0 && oc.contains("format")) a.out.format = oc["format"].get<std::string>();
  }
  if (a.out.format != "csv" && a.out.format != "json") {
    throw UsageError("format must be csv or json");
  }

  const FdeSystem system = make_system(problem, y0);
  const CQScheme scheme = CQScheme::build(params, h, N);
  const Trajectory tr = solve(system, scheme, newton);

  if (a.out.format == "json") {
    json j = trajectory_json(tr);
    stamp_json(j, a.out);
    emit(a.out.path, json_text(j), out);
  } else {
    emit(a.out.path, trajectory_csv(tr, !a.out.no_header, "solve"), out);
  }

  std::string meta_path = a.meta;
  if (meta_path.empty() && !a.out.path.empty() && a.out.path != "-") {
    meta_path = a.out.path + ".meta.json";
  }
  if (!meta_path.empty()) {
    json meta = solver_meta(tr, scheme, newton);
    meta["problem"] = problem_json(problem);
    stamp_json(meta, a.out);
    emit(meta_path, json_text(meta), out);
  }
}

// ---------------------------------------------------------------- repro

struct ReproArgs {
  std::string id;
  std::string dir = ".";
  bool no_header = false;
};

void add_repro(CLI::App& app, ReproArgs& a) {
  auto* cmd = app.add_subcommand("repro", "Write the data of a built-in experiment");
  cmd->add_option("id", a.id, "Experiment id")
      ->required()
      ->check(CLI::IsMember({"region-gamma", "region-omega", "a-points", "a1-stable",
                             "a2-border", "a3-unstable", "brusselator-region",
                             "brusselator-stable", "brusselator-unstable", "omega-star", "all"}));
  cmd->add_option("--output", a.dir, "Directory for the data files")->capture_default_str();
  cmd->add_flag("--no-header", a.no_header, "Omit version stamps");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prabhakar functions, stability regions and fractional solvers", "prabhakar"};
  app.set_version_flag("--version", kGenerator);
  app.require_subcommand(1);
  // -h would collide with the step-size flag --h of solve
  app.set_help_flag("--help", "Print this help message and exit");

  EvalArgs eval;
  RegionArgs region;
  ClassifyArgs classify_args;
  SolveArgs solve_args;
  ReproArgs repro;
  add_eval(app, eval);
  add_region(app, region);
  add_classify(app, classify_args);
  add_solve(app, solve_args);
  add_repro(app, repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("eval")) run_eval(eval, out);
    else if (app.got_subcommand("region")) run_region(region, out);
    else if (app.got_subcommand("classify")) run_classify(classify_args, out);
    else if (app.got_subcommand("solve")) run_solve(solve_args, out);
    else if (app.got_subcommand("repro")) run_repro(repro.id, repro.dir, !repro.no_header, out);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_validation_error(e.kind()) ? 2 : 3;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace prabhakar::cli
