#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "prabhakar/error.hpp"
#include "prabhakar/stability.hpp"
#include "reference_values.hpp"

namespace prabhakar {
namespace {

using std::numbers::pi;

const PrabhakarParams kP{0.8, 0.9, 0.8, -1.0};
const Complex kA1{0.866, 1.171};
const Complex kA2{0.901, 1.161};
const Complex kA3{0.936, 1.151};

TEST(Curve, EndpointWhenBetaEqualsAlphaGamma) {
  const PrabhakarParams p(0.8, 0.8 * 0.8, 0.8, -1.0);
  EXPECT_NEAR(std::abs(curve_point(p, 0.0) - Complex(1.0, 0.0)), 0.0, 1e-15);
  const PrabhakarParams q(0.8, 0.8 * 0.8, 0.8, -3.0);
  EXPECT_NEAR(curve_point(q, 0.0).real(), std::pow(3.0, 0.8), 1e-14);
  EXPECT_NEAR(std::abs(curve_point(q, 1e-9)), std::pow(3.0, 0.8), 1e-7);
}

TEST(Curve, VanishesAtZeroWhenBetaExceedsAlphaGamma) {
  EXPECT_EQ(std::abs(curve_point(kP, 0.0)), 0.0);
  // |Lambda| ~ c theta^((beta - alpha gamma) / alpha): slow algebraic decay
  const double e = 0.26 / 0.8;
  const double c1 = std::abs(curve_point(kP, 1e-20)) / std::pow(1e-20, e);
  const double c2 = std::abs(curve_point(kP, 1e-80)) / std::pow(1e-80, e);
  EXPECT_NEAR(c1 / c2, 1.0, 1e-10);
  EXPECT_LT(std::abs(curve_point(kP, 1e-40)), 1e-12);
}

TEST(Curve, FrozenInteriorPoint) {
  const double theta = 0.2 * theta_limit(kP);
  const Complex p = curve_point(kP, theta);
  EXPECT_LT(std::abs(p - ref::kCurvePoint_02) / std::abs(ref::kCurvePoint_02), 1e-13);
  EXPECT_NEAR(std::arg(p), 0.8 * theta + 0.13 * pi, 1e-12);
}

TEST(Curve, RejectsThetaOutsideRange) {
  EXPECT_THROW((void)curve_point(kP, -0.1), Error);
  EXPECT_THROW((void)curve_point(kP, theta_limit(kP)), Error);
}

TEST(Curve, ModulusMatchesPoint) {
  for (const double f : {0.1, 0.5, 0.9, 0.999}) {
    const double theta = f * theta_limit(kP);
    EXPECT_NEAR(curve_modulus(kP, theta) / std::abs(curve_point(kP, theta)), 1.0, 1e-13);
  }
}

TEST(CurveSample, TwoPoints) {
  const BoundaryCurve c = curve_sample(kP, 2);
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_EQ(std::abs(c.points[0]), 0.0);
  EXPECT_GT(std::abs(c.points[1]), 0.0);
}

TEST(CurveSample, ArgumentLawMonotoneAndDistinct) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.2, 1.0);
  std::uniform_real_distribution<double> uf(0.05, 1.0);
  std::uniform_real_distribution<double> uw(-5.0, -0.1);
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const double b = uf(rng);
    const double g = b / a * uf(rng);
    const PrabhakarParams p(a, b, g, uw(rng));
    const BoundaryCurve c = curve_sample(p, 300);
    double prev_arg = -1.0;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const Complex z = c.points[k];
      EXPECT_GE(z.real(), -1e-12);
      EXPECT_GE(z.imag(), -1e-12);
      if (std::abs(z) == 0.0) continue;
      const double arg = std::arg(z);
      EXPECT_NEAR(arg, g * c.thetas[k] + (b - a * g) * pi / 2, 1e-12);
      EXPECT_GT(arg, prev_arg);
      prev_arg = arg;
      if (k > 0) EXPECT_NE(z, c.points[k - 1]);
    }
  }
}

TEST(CurveSample, ApproachesLimitingArgument) {
  const BoundaryCurve c = curve_sample(kP, 400, std::nullopt, 1e3);
  EXPECT_NEAR(std::arg(c.points.back()), 0.45 * pi, 0.05);
  EXPECT_LE(std::abs(c.points.back()), 1e3 * (1 + 1e-9));
  // grading: consecutive moduli grow by at most a factor of two
  for (std::size_t k = 2; k < c.points.size(); ++k) {
    EXPECT_LE(std::abs(c.points[k]) / std::abs(c.points[k - 1]), 2.0) << k;
  }
}

TEST(CurveSample, RejectsBadInput) {
  EXPECT_THROW((void)curve_sample(kP, 1), Error);
  EXPECT_THROW((void)curve_sample(kP, 10, theta_limit(kP)), Error);
}

TEST(Classify, NegativeRealAxisIsStable) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const PrabhakarParams p(a, b, b / a * u(rng), -3.0 * u(rng));
    EXPECT_EQ(classify(p, -1.0).status, Verdict::Stable);
  }
}

TEST(Classify, ReferenceTestPoints) {
  EXPECT_EQ(classify(kP, kA1).status, Verdict::Stable);
  EXPECT_EQ(classify(kP, kA3).status, Verdict::Unstable);
  const StabilityVerdict v = classify(kP, kA2, 5e-3);
  EXPECT_EQ(v.status, Verdict::Marginal);
  ASSERT_TRUE(v.margin.has_value());
  EXPECT_LT(std::abs(*v.margin) / std::abs(kA2), 5e-3);
}

TEST(Classify, ConjugateSymmetry) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Complex l(u(rng), u(rng));
    EXPECT_EQ(classify(kP, l).status, classify(kP, std::conj(l)).status);
  }
}

TEST(Classify, ZeroEigenvalue) {
  const auto v = classify(kP, 0.0);
  EXPECT_EQ(v.status, Verdict::Marginal);
  EXPECT_TRUE(v.special_case_zero);
  const PrabhakarParams q(0.8, 0.64, 0.8, -1.0);
  EXPECT_EQ(classify(q, 0.0).status, Verdict::Stable);
}

TEST(Classify, WedgeBetweenInitialArgumentsIsUnstable) {
  // 0 < |Arg| < (beta - alpha gamma) pi / 2 = 0.13 pi
  EXPECT_EQ(classify(kP, std::polar(0.01, 0.1)).status, Verdict::Unstable);
  EXPECT_EQ(classify(kP, std::polar(100.0, -0.1)).status, Verdict::Unstable);
}

TEST(ClassifySpectrum, Examples) {
  EXPECT_EQ(classify_spectrum(kP, {-1.0, -2.0}).overall.status, Verdict::Stable);
  EXPECT_EQ(classify_spectrum(kP, {-1.0, kA3}).overall.status, Verdict::Unstable);
  EXPECT_EQ(classify_spectrum(kP, {kA2}, 5e-3).overall.status, Verdict::Marginal);
  EXPECT_THROW((void)classify_spectrum(kP, {}), Error);
}

TEST(RootLocus, SpecialAngles) {
  const RootLocusPoint r0 = root_locus(kP, 0.0);
  EXPECT_EQ(r0.mu, 0.0);
  EXPECT_NEAR(r0.rho, 1.0, 1e-15);
  const RootLocusPoint r1 = root_locus(kP, 0.8 * pi / 4);
  EXPECT_NEAR(r1.mu, 1.0, 1e-14);
}

TEST(RootLocus, CharacteristicValueOnImaginaryAxisHitsCurve) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 20; ++i) {
    const double theta = u(rng) * theta_limit(kP);
    const RootLocusPoint r = root_locus(kP, theta);
    const Complex lhs = characteristic_value(kP, Complex(0.0, r.mu));
    const Complex rhs = curve_point(kP, theta);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(rhs)) << theta;
  }
}

TEST(CharacteristicValue, ClosedForms) {
  EXPECT_NEAR(characteristic_value(PrabhakarParams(1, 1, 1, -1), 2.0).real(), 3.0, 1e-15);
  EXPECT_NEAR(characteristic_value(kP, 1.0).real(), std::pow(2.0, 0.8), 1e-15);
  EXPECT_THROW((void)characteristic_value(kP, -2.0), Error);
}

TEST(CountUnstableRoots, Examples) {
  EXPECT_EQ(count_unstable_roots(kP, -1.0), 0);
  EXPECT_EQ(count_unstable_roots(kP, kA1), 0);
  EXPECT_GE(count_unstable_roots(kP, kA3), 1);
  EXPECT_THROW((void)count_unstable_roots(kP, kA2, 0.1, 5e-3), Error);
}

TEST(CountUnstableRoots, AgreesWithClassification) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  int checked = 0;
  while (checked < 60) {
    const Complex l(u(rng), u(rng));
    const StabilityVerdict v = classify(kP, l);
    if (!v.margin || std::abs(*v.margin) <= 1e-2 * std::abs(l)) continue;
    const int n = count_unstable_roots(kP, l);
    EXPECT_EQ(v.status == Verdict::Stable, n == 0) << l;
    ++checked;
  }
}

TEST(DominantSingularity, LinearCase) {
  const PrabhakarParams p(1, 1, 1, -1);
  EXPECT_NEAR(std::abs(dominant_singularity(p, 3.0) - Complex(2.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(dominant_singularity(p, 1.0)), 0.0, 1e-12);
}

TEST(DominantSingularity, TestPoints) {
  const Complex s1 = dominant_singularity(kP, kA1);
  EXPECT_LT(std::abs(s1 - ref::kSBarA1), 1e-12);
  EXPECT_LT(std::abs(characteristic_value(kP, s1) - kA1), 1e-10 * std::abs(kA1));
  EXPECT_LT(std::abs(dominant_singularity(kP, kA2).real()), 1e-3);
  EXPECT_LT(std::abs(dominant_singularity(kP, kA3) - ref::kSBarA3), 1e-12);
  EXPECT_THROW((void)dominant_singularity(kP, 0.0), Error);
}

TEST(CriticalOmega, BrusselatorValue) {
  const Complex lambda(1.5, 2.7839);
  const CriticalOmega c = critical_omega(0.9, 0.95, 0.8, lambda);
  EXPECT_NEAR(c.omega_star, -1.58444, 1e-4);
  EXPECT_DOUBLE_EQ(c.theta_star, (std::arg(lambda) - (0.95 - 0.72) * pi / 2) / 0.8);
  const PrabhakarParams p(0.9, 0.95, 0.8, c.omega_star);
  EXPECT_EQ(classify(p, lambda, 1e-6).status, Verdict::Marginal);
}

TEST(CriticalOmega, OutsideArgumentBand) {
  EXPECT_THROW((void)critical_omega(0.9, 0.95, 0.8, Complex(-1.0, 0.1)), Error);
  EXPECT_THROW((void)critical_omega(0.9, 0.95, 0.8, Complex(1.0, 0.01)), Error);
}

TEST(MatignonWedge, Examples) {
  EXPECT_EQ(matignon_wedge(1.0, -1.0).status, Verdict::Stable);
  EXPECT_EQ(matignon_wedge(1.0, Complex(0.0, 1.0)).status, Verdict::Marginal);
  EXPECT_EQ(matignon_wedge(0.9, std::polar(1.0, 0.46 * pi)).status, Verdict::Stable);
  EXPECT_EQ(matignon_wedge(0.9, std::polar(1.0, 0.44 * pi)).status, Verdict::Unstable);
}

TEST(MatignonWedge, SmallGammaLimit) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uarg(-pi, pi);
  std::uniform_real_distribution<double> ulog(-3.0, 3.0);
  const double beta = 0.9;
  const PrabhakarParams p(0.8, beta, 1e-6, -1.0);
  int checked = 0;
  while (checked < 1000) {
    const double phi = uarg(rng);
    if (std::abs(std::abs(phi) - beta * pi / 2) <= 1e-3) continue;
    const Complex l = std::polar(std::pow(10.0, ulog(rng)), phi);
    EXPECT_EQ(classify(p, l).status, matignon_wedge(beta, l).status) << l;
    ++checked;
  }
}

}  // namespace
}  // namespace prabhakar
