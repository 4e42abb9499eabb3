// Acceptance suite: one PASS/FAIL line per criterion with the measured
// quantities and wall time. Exit status is 0 once every criterion has been
// evaluated; --strict turns any FAIL into exit status 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "prabhakar/asymptotics.hpp"
#include "prabhakar/cq_solver.hpp"
#include "prabhakar/special_fn.hpp"
#include "prabhakar/spectra.hpp"
#include "prabhakar/stability.hpp"
#include "reference_values.hpp"

namespace {

using namespace prabhakar;
using std::numbers::pi;

const PrabhakarParams kP{0.8, 0.9, 0.8, -1.0};
const Complex kA1{0.866, 1.171};
const Complex kA2{0.901, 1.161};
const Complex kA3{0.936, 1.151};

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

State scalar(Complex v) { return State::Constant(1, v); }
Eigen::MatrixXcd one_by_one(Complex a) { return Eigen::MatrixXcd::Constant(1, 1, a); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

Outcome test_points() {
  Outcome o;
  const auto v1 = classify(kP, kA1, 5e-3);
  const auto v2 = classify(kP, kA2, 5e-3);
  const auto v3 = classify(kP, kA3, 5e-3);
  o.check(v1.status == Verdict::Stable, std::string("A1 ") + to_string(v1.status));
  o.check(v3.status == Verdict::Unstable, std::string("A3 ") + to_string(v3.status));
  const double m = v2.margin ? std::abs(*v2.margin) / std::abs(kA2) : INFINITY;
  o.check(v2.status == Verdict::Marginal && m < 5e-3,
          std::string("A2 ") + to_string(v2.status) + fmt(" |margin|/|A2|=%.3g", m));
  return o;
}

Outcome brusselator() {
  Outcome o;
  Eigen::MatrixXd J(2, 2);
  J << 13, 10, -14, -10;
  const auto ev = eigenvalues_2x2(J);
  const Complex upper = ev[0].imag() > 0 ? ev[0] : ev[1];
  const double err = std::abs(upper - Complex(1.5, 2.7839));
  o.check(err < 1e-4 && std::abs(ev[0] - std::conj(ev[1])) < 1e-15,
          fmt("lambda=1.5+%.6fi", upper.imag()));
  const std::vector<Complex> spec{ev[0], ev[1]};
  const auto s = classify_spectrum(PrabhakarParams(0.9, 0.95, 0.8, -4.0), spec);
  const auto u = classify_spectrum(PrabhakarParams(0.9, 0.95, 0.8, -0.5), spec);
  o.check(s.overall.status == Verdict::Stable,
          std::string("omega=-4 ") + to_string(s.overall.status));
  o.check(u.overall.status == Verdict::Unstable,
          std::string("omega=-0.5 ") + to_string(u.overall.status));
  return o;
}

Outcome critical() {
  Outcome o;
  const CriticalOmega c = critical_omega(0.9, 0.95, 0.8, Complex(1.5, 2.7839));
  o.check(std::abs(c.omega_star + 1.58444) <= 1e-4, fmt("omega*=%.8f", c.omega_star));
  return o;
}

Outcome matignon() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> phase(-pi, pi);
  std::uniform_real_distribution<double> logr(std::log(1e-2), std::log(1e2));
  const double beta = 0.9;
  const PrabhakarParams p(0.8, beta, 1e-6, -1.0);
  int agree = 0, n = 0;
  while (n < 1000) {
    const double phi = phase(rng);
    if (std::abs(std::abs(phi) - beta * pi / 2) <= 1e-3) continue;
    const Complex l = std::polar(std::exp(logr(rng)), phi);
    const bool wedge_stable = std::abs(phi) > beta * pi / 2;
    agree += (classify(p, l).status == Verdict::Stable) == wedge_stable;
    ++n;
  }
  o.check(agree == n, std::to_string(agree) + "/" + std::to_string(n) + " agree");
  return o;
}

Outcome argument_principle() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  int agree = 0, total = 0;
  for (int set = 0; set < 5; ++set) {
    const double a = 0.3 + 0.7 * unit(rng);
    const double b = 0.3 + 0.7 * unit(rng);
    const double g = (0.05 + 0.95 * unit(rng)) * b / a;
    const double w = -(0.2 + 3.0 * unit(rng));
    const PrabhakarParams p(a, b, g, w);
    int n = 0;
    while (n < 200) {
      const Complex l(box(rng), box(rng));
      const StabilityVerdict v = classify(p, l);
      if (!v.margin || std::abs(*v.margin) <= 1e-2 * std::abs(l)) continue;
      agree += (v.status == Verdict::Stable) == (count_unstable_roots(p, l) == 0);
      ++n;
    }
    total += n;
  }
  o.check(agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree");
  return o;
}

Outcome curve_invariants() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0, worst_limit = 0.0;
  for (int set = 0; set < 20; ++set) {
    const double a = 0.2 + 0.8 * unit(rng);
    const double b = 0.2 + 0.8 * unit(rng);
    const double g = (0.05 + 0.9 * unit(rng)) * b / a;
    const PrabhakarParams p(a, b, g, -(0.1 + 4.0 * unit(rng)));
    const BoundaryCurve c = curve_sample(p, 400);
    for (std::size_t k = 1; k < c.points.size(); ++k) {
      worst = std::max(worst, std::abs(std::arg(c.points[k]) - (g * c.thetas[k] + c.arg_min)));
    }
    const double near = theta_limit(p) * (1.0 - 1e-9);
    worst_limit = std::max(worst_limit, std::abs(std::arg(curve_point(p, near)) - b * pi / 2));
  }
  o.check(worst <= 1e-12, fmt("arg identity max err %.2g", worst));
  // |Lambda(theta)| ~ c theta^((beta - alpha gamma) / alpha) as theta -> 0+
  const double e = kP.beta_minus_alpha_gamma() / kP.alpha();
  const double law = std::abs(curve_point(kP, 1e-20) / std::pow(1e-20, e)) /
                     std::abs(curve_point(kP, 1e-100) / std::pow(1e-100, e));
  const double origin = std::abs(curve_point(kP, 1e-100));
  o.check(origin < 1e-30 && std::abs(law - 1.0) < 1e-10,
          fmt("|Lambda(1e-100)|=%.2g", origin) + fmt(" decay-law ratio %.12f", law));
  const PrabhakarParams eq(0.8, 0.64, 0.8, -2.0);
  const double e0 = std::abs(curve_point(eq, 0.0) - std::pow(2.0, 0.8));
  o.check(e0 < 1e-14, fmt("beta=ag |Lambda(0)-|w|^g|=%.2g", e0));
  o.check(worst_limit < 1e-6, fmt("arg limit err %.2g", worst_limit));
  return o;
}

Outcome reductions() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double ml = 0.0, ex = 0.0, poly = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Complex z = std::polar(5.0 * std::sqrt(unit(rng)), pi * (2.0 * unit(rng) - 1.0));
    const double a = 0.3 + 0.7 * unit(rng);
    const double b = 0.3 + 1.2 * unit(rng);
    const Complex want = oracle::mittag_leffler(a, b, z);
    ml = std::max(ml, std::abs(prabhakar_eval(a, b, 1.0, z).value - want) / std::max(1.0, std::abs(want)));
    const Complex e = std::exp(z);
    ex = std::max(ex, std::abs(prabhakar_eval(1.0, 1.0, 1.0, z).value - e) / std::abs(e));
  }
  for (int j = 1; j <= 6; ++j) {
    const double a = 0.7, b = 0.8;
    const Complex z(-1.3, 0.4);
    Complex want = 0.0, zk = 1.0;
    double binom = 1.0;  // (-j)_k / k!
    for (int k = 0; k <= j; ++k) {
      want += binom * zk / std::tgamma(a * k + b);
      binom *= (-j + k) / double(k + 1);
      zk *= z;
    }
    const SeriesResult r = prabhakar_eval(a, b, -j, z);
    poly = std::max(poly, std::abs(r.value - want) / std::abs(want));
    o.pass = o.pass && r.branch == Branch::Polynomial;
  }
  double overlap = 0.0;
  auto grid = [&](const auto& pts, const auto& prm) {
    for (const auto& [x, v] : pts) {
      const auto s = prabhakar_asymptotic(prm[0], prm[1], prm[2], x, 400);
      overlap = std::max(overlap, std::abs(s.value.real() - v) / std::abs(v));
    }
  };
  grid(ref::kOverlapA, ref::kOverlapParamsA);
  grid(ref::kOverlapB, ref::kOverlapParamsB);
  grid(ref::kOverlapC, ref::kOverlapParamsC);
  o.check(ml <= 1e-10, fmt("gamma=1 vs ML %.2g", ml));
  o.check(ex <= 1e-13, fmt("exp %.2g", ex));
  o.check(poly <= 1e-13, fmt("polynomial %.2g", poly));
  o.check(overlap <= 1e-8, fmt("overlap %.2g", overlap));
  return o;
}

Outcome exactness_and_order() {
  Outcome o;
  double worst = 0.0;
  for (const double beta : {0.9, 0.4}) {
    const PrabhakarParams p(0.7, beta, 0.5, -2.0);
    const int N = 256;
    const double h = 4.0 / N;
    const CQScheme s = CQScheme::build(p, h, N);
    for (const double nu : exactness_exponents(beta)) {
      std::vector<double> g(N + 1);
      for (int j = 0; j <= N; ++j) g[j] = nu == 0.0 ? 1.0 : std::pow(j * h, nu);
      for (int n = 1; n <= N; ++n) {
        const double exact = integral_of_power(p, nu, n * h);
        worst = std::max(worst, std::abs(quadrature(s, g, n) - exact) / std::abs(exact));
      }
    }
  }
  o.check(worst <= 1e-11, fmt("exactness max rel %.2g", worst));
  double prev = 0.0, min_order = INFINITY;
  for (int k = 6; k <= 9; ++k) {
    const int N = 1 << k;
    const Trajectory tr = solve(linear_system(one_by_one(kA1), scalar(1.0)), kP, 1.0 / N, N);
    const double err = std::abs(tr.states.back()(0) - ref::kSmallTimeA1_t1p0);
    if (prev > 0.0) min_order = std::min(min_order, std::log2(prev / err));
    prev = err;
  }
  o.check(min_order >= 1.9, fmt("min order %.3f", min_order));
  return o;
}

Outcome three_way() {
  Outcome o;
  // fine solve on [0, 0.5] for the small-time comparison
  {
    const int N = 4096;
    const double h = 0.5 / N;
    const Trajectory tr = solve(linear_system(one_by_one(kA1), scalar(1.0)), kP, h, N);
    double worst = 0.0;
    for (int n = 256; n <= N; n += 256) {
      const ExpansionValue e = small_time_series(kP, kA1, 1.0, n * h, 40);
      worst = std::max(worst, rel(tr.states[n](0), e.value));
    }
    o.check(worst <= 1e-6, fmt("small-time max rel %.2g", worst));
  }
  const int N = 1 << 13;
  const Trajectory tr = solve(linear_system(one_by_one(kA1), scalar(1.0)), kP, 50.0 / N, N);
  const ExpansionValue big = large_time_expansion(kP, kA1, 1.0, 50.0, 40);
  const double err = rel(tr.states.back()(0), big.value);
  o.check(err <= 1e-4, fmt("t=50 solver vs large-time rel %.3g", err));
  return o;
}

Outcome trajectory_windows() {
  Outcome o;
  const int N = 1 << 13;
  const double T = 50.0;
  const CQScheme scheme = CQScheme::build(kP, T / N, N);
  auto amplitude = [](const Trajectory& tr, double t0, double t1) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t n = 0; n < tr.times.size(); ++n) {
      if (tr.times[n] < t0 || tr.times[n] > t1) continue;
      lo = std::min(lo, tr.states[n](0).real());
      hi = std::max(hi, tr.states[n](0).real());
    }
    return hi - lo;
  };
  auto run = [&](Complex A) { return solve(linear_system(one_by_one(A), scalar(1.0)), scheme); };
  const Trajectory t1 = run(kA1);
  const double r1 = amplitude(t1, 40, 50) / amplitude(t1, 0, 10);
  o.check(r1 < 0.1, fmt("A1 end/start %.3f", r1));
  const Trajectory t3 = run(kA3);
  const double r3 = amplitude(t3, 40, 50) / amplitude(t3, 0, 10);
  o.check(r3 > 1.0, fmt("A3 end/start %.3f", r3));
  const Trajectory t2 = run(kA2);
  const double r2 = amplitude(t2, 40, 50) / amplitude(t2, 20, 30);
  o.check(std::abs(r2 - 1.0) <= 0.25, fmt("A2 end/mid %.3f", r2));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<Criterion> all = {
      {1, "test-point classification", 1, test_points},
      {2, "brusselator eigenvalues and verdicts", 1, brusselator},
      {3, "critical omega", 1, critical},
      {4, "small-gamma wedge limit", 1, matignon},
      {5, "classification vs argument principle", 30, argument_principle},
      {6, "boundary curve invariants", 1, curve_invariants},
      {7, "special-function reductions", 10, reductions},
      {8, "quadrature exactness and order", 60, exactness_and_order},
      {9, "solver vs expansions", 60, three_way},
      {10, "qualitative trajectories", 60, trajectory_windows},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s (%.2fs of %.0fs)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), s, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return strict && failed ? 1 : 0;
}
