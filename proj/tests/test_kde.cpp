#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "srh/errors.hpp"
#include "srh/kde.hpp"
#include "srh/spectra.hpp"

using namespace srh;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

std::vector<double> abs_normal_sample(std::size_t n, std::uint64_t seed) {
  auto x = normal_sample(n, seed);
  for (double& v : x) v = std::abs(v);
  return x;
}

double standard_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * kPi); }

}  // namespace

TEST(Kernel, NormalizationAndMoments) {
  for (auto kind : {KernelKind::gaussian, KernelKind::epanechnikov, KernelKind::triangle}) {
    const Kernel k(kind);
    const double a = -12.0, b = 12.0;
    EXPECT_NEAR(test::simpson(k, a, b, 240000), 1.0, 1e-8) << k.name();
    EXPECT_NEAR(test::simpson([&](double t) { return t * t * k(t); }, a, b, 240000),
                k.second_moment(), 1e-8)
        << k.name();
    EXPECT_NEAR(test::simpson([&](double t) { return k(t) * k(t); }, a, b, 240000),
                k.roughness(), 1e-8)
        << k.name();
    EXPECT_EQ(Kernel::from_name(k.name()).kind(), kind);
    for (double u : {0.1, 0.5, 0.9, 2.0}) {
      EXPECT_EQ(k(u), k(-u));
      EXPECT_GE(k(u), 0.0);
    }
  }
  EXPECT_NEAR(Kernel().roughness(), 1.0 / (2 * std::sqrt(kPi)), 1e-15);
  EXPECT_THROW(Kernel::from_name("boxcar"), DomainError);
}

TEST(KdeEval, Examples) {
  DensityEstimate one{{0.0}, Kernel(), 1.0};
  EXPECT_NEAR(kde_eval(one, 0.0), 0.398942280401, 1e-12);
  DensityEstimate two{{-1.0, 1.0}, Kernel(), 1.0};
  EXPECT_NEAR(kde_eval(two, 0.0), 0.241970724519, 1e-12);
  EXPECT_EQ(kde_eval(two, 1e6), 0.0);
  EXPECT_EQ(kde_eval(two, -1e6), 0.0);
}

TEST(KdeEval, UnsortedAndSortedAgree) {
  auto x = normal_sample(500, 1);
  DensityEstimate a{x, Kernel(), 0.3};
  std::sort(x.begin(), x.end());
  DensityEstimate b{x, Kernel(), 0.3};
  for (double t = -4.0; t <= 4.0; t += 0.37) {
    EXPECT_NEAR(kde_eval(a, t), kde_eval(b, t), 1e-13);
  }
}

TEST(KdeEval, IntegratesToOne) {
  const auto x = normal_sample(40, 2);
  for (auto kind : {KernelKind::gaussian, KernelKind::epanechnikov, KernelKind::triangle}) {
    DensityEstimate est{x, Kernel(kind), 0.4};
    const double mass = test::simpson([&](double t) { return kde_eval(est, t); }, -12.0, 12.0,
                                      400000);
    EXPECT_NEAR(mass, 1.0, 1e-6) << Kernel(kind).name();
  }
}

TEST(Silverman, Examples) {
  const auto x = normal_sample(10000, 3);
  const double h = bandwidth_silverman(x);
  EXPECT_NEAR(h, 0.9 * std::pow(1e4, -0.2), 0.1 * 0.9 * std::pow(1e4, -0.2));

  auto shifted = x;
  for (double& v : shifted) v += 17.0;
  EXPECT_NEAR(bandwidth_silverman(shifted), h, 1e-9 * h);

  // duplicated with tiny jitter: same dispersion, twice the size
  std::vector<double> doubled = x;
  for (double v : x) doubled.push_back(v + 1e-9);
  EXPECT_NEAR(bandwidth_silverman(doubled) / h, std::pow(2.0, -0.2), 1e-4);

  EXPECT_THROW(bandwidth_silverman(std::vector<double>(10, 1.0)), EstimationError);
  EXPECT_THROW(bandwidth_silverman(std::vector<double>{1.0}), DomainError);
}

TEST(SheatherJones, NearGaussianCloseToSilverman) {
  const auto x = normal_sample(10000, 4);
  const auto sj = bandwidth_sheather_jones(x);
  EXPECT_FALSE(sj.fell_back);
  EXPECT_NEAR(sj.bandwidth / bandwidth_silverman(x), 1.0, 0.25);
}

TEST(SheatherJones, BimodalIsNarrower) {
  auto x = normal_sample(4000, 5);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += (i % 2 ? 3.0 : -3.0);
  const auto sj = bandwidth_sheather_jones(x);
  EXPECT_FALSE(sj.fell_back);
  EXPECT_LT(sj.bandwidth, bandwidth_silverman(x));
}

TEST(SheatherJones, ScaleEquivariance) {
  const auto x = abs_normal_sample(3000, 6);
  const double h = bandwidth_sheather_jones(x).bandwidth;
  for (double c : {0.01, 3.0, 250.0}) {
    auto y = x;
    for (double& v : y) v *= c;
    EXPECT_NEAR(bandwidth_sheather_jones(y).bandwidth / (c * h), 1.0, 1e-6);
  }
  EXPECT_THROW(bandwidth_sheather_jones(std::vector<double>{1, 2, 3}), DomainError);
  EXPECT_THROW(bandwidth_sheather_jones(std::vector<double>(20, 2.0)), EstimationError);
}

TEST(OracleBandwidth, GaussianClosedForm) {
  const auto f1 = builtin_density("f1");
  const Kernel k;
  // 2 f1 is the half-normal; R((2f)'') = 3 / (4 sqrt(pi)) gives h* = (2 / (3N))^(1/5).
  for (std::size_t n : {100u, 1000u, 50000u}) {
    EXPECT_NEAR(optimal_bandwidth_oracle(k, f1, n), std::pow(2.0 / (3.0 * n), 0.2), 1e-7);
  }
  const double r = optimal_bandwidth_oracle(k, f1, 32 * 1000) / optimal_bandwidth_oracle(k, f1, 1000);
  EXPECT_NEAR(r, 0.5, 1e-10);
  const double h2 = optimal_bandwidth_oracle(k, builtin_density("f2"), 1000);
  EXPECT_TRUE(std::isfinite(h2));
  EXPECT_GT(h2, 0.0);
  EXPECT_THROW(optimal_bandwidth_oracle(k, builtin_density("f3"), 1000), DomainError);
  EXPECT_THROW(optimal_bandwidth_oracle(k, builtin_density("f4"), 1000), DomainError);
}

TEST(BandwidthRule, Parse) {
  EXPECT_EQ(BandwidthRule::parse("silverman").kind, BandwidthRule::Kind::silverman);
  EXPECT_EQ(BandwidthRule::parse("sj").kind, BandwidthRule::Kind::sheather_jones);
  const auto f = BandwidthRule::parse("fixed:0.25");
  EXPECT_EQ(f.kind, BandwidthRule::Kind::fixed);
  EXPECT_EQ(f.value, 0.25);
  EXPECT_EQ(BandwidthRule::parse(f.to_string()).value, 0.25);
  EXPECT_THROW(BandwidthRule::parse("fixed:-1"), DomainError);
  EXPECT_THROW(BandwidthRule::parse("fixed:abc"), DomainError);
  EXPECT_THROW(BandwidthRule::parse("scott"), DomainError);
}

TEST(SpectralDensityEstimate, SymmetryAndMass) {
  auto z = abs_normal_sample(2000, 7);
  std::sort(z.begin(), z.end());
  const auto plain = estimate_spectral_density(z, Kernel(), BandwidthRule::parse("fixed:0.2"));
  const auto refl =
      estimate_spectral_density(z, Kernel(), BandwidthRule::parse("fixed:0.2"), true);
  for (double x : {0.0, 0.05, 0.3, 1.7, 4.0}) {
    EXPECT_EQ(plain(x), plain(-x));
    EXPECT_EQ(refl(x), refl(-x));
  }
  const double mass_plain = test::simpson(plain, -10.0, 10.0, 40000);
  const double mass_refl = test::simpson(refl, -10.0, 10.0, 40000);
  EXPECT_NEAR(mass_refl, 1.0, 1e-6);
  // plain estimate loses the kernel mass that falls below 0
  DensityEstimate raw{z, Kernel(), 0.2};
  const double leak = test::simpson([&](double t) { return kde_eval(raw, t); }, -10.0, 0.0,
                                    20000);
  EXPECT_NEAR(mass_plain, 1.0 - leak, 1e-6);
  EXPECT_GT(leak, 0.0);

  const auto grid = plain.export_grid();
  ASSERT_EQ(grid.size(), 512u);
  EXPECT_NEAR(grid.front(), -grid.back(), 1e-12);
  EXPECT_NEAR(grid.back(), quantile(z, 0.995) + 0.6, 1e-12);

  EXPECT_THROW(estimate_spectral_density(std::vector<double>{1.0}, Kernel(),
                                         BandwidthRule::parse("silverman")),
               EstimationError);
  EXPECT_THROW(estimate_spectral_density(std::vector<double>{1.0, -0.5}, Kernel(),
                                         BandwidthRule::parse("silverman")),
               DomainError);
}

TEST(SpectralDensityEstimate, TrueFrequenciesWithSheatherJones) {
  const auto f1 = builtin_density("f1");
  const auto z = abs_normal_sample(10000, 8);
  const auto est = estimate_spectral_density(z, Kernel(), BandwidthRule::parse("sj"));
  EXPECT_FALSE(est.bandwidth_fell_back());
  EXPECT_LE(l1_distance(est, f1), 0.05);
}

TEST(L1Distance, MatchesIndependentQuadrature) {
  const auto f1 = builtin_density("f1");
  const auto z = abs_normal_sample(300, 9);
  const auto est = estimate_spectral_density(z, Kernel(), BandwidthRule::parse("fixed:0.3"));
  const double direct = test::simpson(
      [&](double x) { return std::abs(est(x) - standard_normal_pdf(x)); }, -15.0, 15.0, 300000);
  EXPECT_NEAR(l1_distance(est, f1), direct, 1e-5);
}

TEST(Consistency, LadderWithFixedRateBandwidth) {
  const auto f1 = builtin_density("f1");
  std::vector<double> medians;
  for (std::size_t n : {250u, 1000u, 4000u, 16000u}) {
    const auto rule = BandwidthRule{BandwidthRule::Kind::fixed, std::pow(double(n), -0.2)};
    std::vector<double> errs;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto est = estimate_spectral_density(abs_normal_sample(n, 1000 + seed), Kernel(), rule);
      errs.push_back(l1_distance(est, f1, 4001));
    }
    medians.push_back(test::median(errs));
  }
  for (std::size_t i = 1; i < medians.size(); ++i) EXPECT_LT(medians[i], medians[i - 1]);
}

TEST(Consistency, MiseSlopeWithOracleBandwidth) {
  const auto f1 = builtin_density("f1");
  std::vector<double> logn, logmise;
  for (std::size_t n : {250u, 1000u, 4000u}) {
    const double h = optimal_bandwidth_oracle(Kernel(), f1, n);
    const auto rule = BandwidthRule{BandwidthRule::Kind::fixed, h};
    double acc = 0.0;
    const int reps = 40;
    for (int r = 0; r < reps; ++r) {
      const auto est = estimate_spectral_density(abs_normal_sample(n, 5000 + 97 * n + r), Kernel(),
                                                 rule, true);
      acc += test::simpson(
          [&](double x) {
            const double d = 2.0 * (est(x) - standard_normal_pdf(x));
            return d * d;
          },
          0.0, 8.0, 1600);
    }
    logn.push_back(std::log(double(n)));
    logmise.push_back(std::log(acc / reps));
  }
  const double mx = test::mean(logn), my = test::mean(logmise);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    sxy += (logn[i] - mx) * (logmise[i] - my);
    sxx += (logn[i] - mx) * (logn[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -0.8, 0.25);
}
