#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "srh/errors.hpp"
#include "srh/quadrature.hpp"
#include "srh/random.hpp"
#include "srh/spectra.hpp"
#include "srh/stable.hpp"

using namespace srh;
constexpr double kPi = std::numbers::pi;

TEST(Alpha, Domain) {
  EXPECT_THROW(Alpha(0.0), DomainError);
  EXPECT_THROW(Alpha(2.0001), DomainError);
  EXPECT_THROW(Alpha{std::nan("")}, DomainError);
  EXPECT_NO_THROW(Alpha(2.0));
  EXPECT_THROW(ScaleParam(0.0), DomainError);
  EXPECT_THROW(ScaleParam{std::numeric_limits<double>::infinity()}, DomainError);
}

TEST(LambdaAlpha, Examples) {
  EXPECT_NEAR(lambda_alpha(Alpha(2.0)), 0.5, 1e-14);
  EXPECT_NEAR(lambda_alpha(Alpha(1.0)), 2.0 / kPi, 1e-14);
  EXPECT_NEAR(lambda_alpha(Alpha(1e-9)), 1.0, 1e-8);
}

TEST(LambdaAlpha, ClosedFormMatchesQuadrature) {
  for (int i = 1; i <= 32; ++i) {
    const Alpha a(2.0 * i / 32.0);
    EXPECT_NEAR(lambda_alpha(a), lambda_alpha_quadrature(a), 1e-10) << a.value();
  }
}

TEST(LambdaAlpha, DecreasingInAlpha) {
  double prev = 1.0;
  for (int i = 1; i <= 32; ++i) {
    const double v = lambda_alpha_quadrature(Alpha(2.0 * i / 32.0));
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    prev = v;
  }
}

TEST(CAlpha, Examples) {
  EXPECT_NEAR(c_alpha(Alpha(1.0)), 2.0 / kPi, 1e-15);
  EXPECT_NEAR(c_alpha(Alpha(0.5)), 0.797885, 1e-6);
  // int_0^inf x^-1/2 sin x dx = sqrt(pi/2) by quadrature over periods
  QuadratureConfig cfg;
  double acc = integrate([](double x) { return std::sin(x) / std::sqrt(x); }, 0.0, kPi, cfg);
  std::vector<double> terms;
  for (int k = 1; k < 4000; ++k) {
    terms.push_back(integrate([](double x) { return std::sin(x) / std::sqrt(x); }, k * kPi,
                              (k + 1) * kPi, cfg));
  }
  // alternating tail: average consecutive partial sums
  double partial = acc, prev_partial = acc;
  for (double t : terms) {
    prev_partial = partial;
    partial += t;
  }
  const double integral = 0.5 * (partial + prev_partial);
  EXPECT_NEAR(integral, std::sqrt(kPi / 2), 1e-4);
  EXPECT_NEAR(c_alpha(Alpha(0.5)), 1.0 / integral, 1e-4);
  EXPECT_LT(std::abs(c_alpha(Alpha(1.0 + 1e-6)) - 2.0 / kPi), 1e-5);
  EXPECT_LT(std::abs(c_alpha(Alpha(1.0 - 1e-6)) - 2.0 / kPi), 1e-5);
  EXPECT_THROW(c_alpha(Alpha(2.0)), DomainError);
}

TEST(BAlpha, Examples) {
  EXPECT_NEAR(b_alpha(Alpha(2.0)), 2.0, 1e-14);
  EXPECT_NEAR(b_alpha(Alpha(1e-12)), 1.0, 1e-10);
  EXPECT_NEAR(b_alpha(Alpha(1.0)), 1.2533141, 1e-7);
  for (double a : {0.25, 0.75, 1.5, 1.75}) {
    const auto k = stable_constants(Alpha(a));
    EXPECT_GT(k.c_alpha, 0.0);
    EXPECT_GT(k.b_alpha, 0.0);
    EXPECT_GT(k.lambda_alpha, 0.0);
    EXPECT_LE(k.lambda_alpha, 1.0);
  }
}

TEST(SasCf, Examples) {
  EXPECT_EQ(sas_cf(ScaleParam(1.3), Alpha(0.7), 0.0), 1.0);
  EXPECT_NEAR(sas_cf(ScaleParam(1.0), Alpha(2.0), 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(sas_cf(ScaleParam(2.0), Alpha(1.0), 3.0), std::exp(-6.0), 1e-15);
  EXPECT_NEAR(sas_cf(ScaleParam(2.0), Alpha(1.0), -3.0), std::exp(-6.0), 1e-15);
}

TEST(FiniteDimCf, SingleTimeIsMarginal) {
  const auto f1 = builtin_density("f1");
  const auto f3 = builtin_density("f3");
  for (double a : {0.25, 0.75, 1.0, 1.5, 2.0}) {
    const Alpha al(a);
    for (double s : {-2.0, 0.3, 1.0}) {
      const std::vector<double> t = {0.7}, sv = {s};
      QuadratureConfig wide;
      wide.tail_cutoff = 1e7;
      const double expect = sas_cf(ScaleParam(std::pow(lambda_alpha(al), 1.0 / a)), al, s);
      EXPECT_NEAR(finite_dim_cf(f1, al, t, sv), expect, 1e-8);
      EXPECT_NEAR(finite_dim_cf(f3, al, t, sv, wide), expect, 1e-6);
    }
  }
}

TEST(FiniteDimCf, ZeroArguments) {
  const std::vector<double> t = {0.0, 1.0, 2.5}, s = {0.0, 0.0, 0.0};
  EXPECT_EQ(finite_dim_cf(builtin_density("f2"), Alpha(1.2), t, s), 1.0);
}

TEST(FiniteDimCf, GaussianTwoPoint) {
  const std::vector<double> t = {0.0, 1.0}, s = {1.0, -1.0};
  EXPECT_NEAR(finite_dim_cf(builtin_density("f1"), Alpha(2.0), t, s),
              std::exp(-(1.0 - std::exp(-0.5))), 1e-10);
}

TEST(FiniteDimCf, LengthMismatchThrows) {
  const std::vector<double> t = {0.0, 1.0}, s = {1.0};
  EXPECT_THROW(finite_dim_cf(builtin_density("f1"), Alpha(1.0), t, s), DomainError);
}

TEST(AlphaSine, GaussianCase) {
  const auto f1 = builtin_density("f1");
  EXPECT_EQ(alpha_sine_transform(f1, Alpha(1.5), 0.0), 0.0);
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    EXPECT_NEAR(alpha_sine_transform(f1, Alpha(2.0), t), (1 - std::exp(-2 * t * t)) / 4, 1e-10);
  }
  EXPECT_THROW(alpha_sine_transform(f1, Alpha(1.0), -1.0), DomainError);
}

TEST(AlphaSine, BoundedByHalf) {
  for (const char* name : {"f1", "f2", "f3", "f4"}) {
    const auto f = builtin_density(name);
    for (double t : {0.3, 1.0, 4.0, 20.0}) {
      const double v = alpha_sine_transform(f, Alpha(0.5), t);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 0.5 + 1e-9) << name;
    }
  }
}

TEST(AlphaSine, MatchesSimpsonOnUniformDensity) {
  // f4: int_0^1 |sin(t x)|^a / 2 dx, evaluated on a fine Simpson grid per half period
  const auto f4 = builtin_density("f4");
  const double t = 7.3, a = 1.25;
  double ref = 0.0;
  const double half = kPi / t;
  double lo = 0.0;
  while (lo < 1.0) {
    const double hi = std::min(1.0, lo + half);
    ref += test::simpson([&](double x) { return 0.5 * std::pow(std::abs(std::sin(t * x)), a); },
                         lo, hi, 4000);
    lo = hi;
  }
  EXPECT_NEAR(alpha_sine_transform(f4, Alpha(a), t), ref, 1e-8);
}

TEST(Codifference, Identity) {
  const auto f2 = builtin_density("f2");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (double a : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75}) {
    const Alpha al(a);
    const double lam = lambda_alpha(al);
    EXPECT_NEAR(codifference(f2, al, 0.0), 2 * lam, 1e-12);
    for (int i = 0; i < 20; ++i) {
      const double t = u(rng);
      EXPECT_NEAR(codifference(f2, al, t),
                  2 * lam - std::pow(2.0, a + 1) * lam * alpha_sine_transform(f2, al, t / 2),
                  1e-9);
    }
  }
}

TEST(Codifference, GaussianCase) {
  // alpha = 2, f1: 1 - 8 * 0.5 * (1 - e^{-t^2/2}) / 4 = e^{-t^2/2}
  const auto f1 = builtin_density("f1");
  EXPECT_NEAR(codifference(f1, Alpha(2.0), 2.0), std::exp(-2.0), 1e-10);
}

TEST(SampleSas, GaussianVariance) {
  Rng rng = make_stream(3, 0);
  const auto x = sample_sas(Alpha(2.0), ScaleParam(1.5), rng, 100000);
  EXPECT_NEAR(test::variance(x), 2 * 1.5 * 1.5, 0.05 * 2 * 1.5 * 1.5);
}

TEST(SampleSas, CauchyMedian) {
  Rng rng = make_stream(4, 0);
  auto x = sample_sas(Alpha(1.0), ScaleParam(1.0), rng, 100000);
  for (double& v : x) v = std::abs(v);
  EXPECT_NEAR(test::median(x), 1.0, 0.05);
}

TEST(SampleSas, EmpiricalCfMatches) {
  for (double a : {0.5, 1.0, 1.5, 2.0}) {
    Rng rng = make_stream(5, static_cast<std::uint64_t>(a * 100));
    const double sigma = 0.8;
    const auto x = sample_sas(Alpha(a), ScaleParam(sigma), rng, 100000);
    for (int k = 1; k <= 10; ++k) {
      const double s = 0.25 * k;
      std::vector<double> c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::cos(s * x[i]);
      const double se = std::sqrt(test::variance(c) / static_cast<double>(c.size()));
      EXPECT_NEAR(test::mean(c), sas_cf(ScaleParam(sigma), Alpha(a), s), 4 * se + 1e-4)
          << "alpha " << a << " s " << s;
    }
  }
}

TEST(SampleSas, Deterministic) {
  Rng a = make_stream(9, 1), b = make_stream(9, 1);
  EXPECT_EQ(sample_sas(Alpha(1.3), ScaleParam(1.0), a, 50),
            sample_sas(Alpha(1.3), ScaleParam(1.0), b, 50));
}
