#include "srh/stable.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

#include "srh/errors.hpp"

namespace srh {
namespace {
constexpr double kPi = std::numbers::pi;
}

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0 && value <= 2.0)) {
    throw DomainError("alpha must lie in (0, 2], got " + std::to_string(value));
  }
}

ScaleParam::ScaleParam(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("scale must be positive and finite, got " +
                      std::to_string(value));
  }
}

double lambda_alpha(Alpha alpha) {
  const double a = alpha.value();
  return std::exp(std::lgamma(0.5 * (a + 1.0)) - std::lgamma(0.5 * a + 1.0)) /
         std::sqrt(kPi);
}

double lambda_alpha_quadrature(Alpha alpha, const QuadratureConfig& cfg) {
  // |cos|^alpha has period pi and kinks at pi/2 + k pi; over one period
  // the mean is (2/pi) int_0^{pi/2} cos^alpha.
  // cos^alpha vanishes like (pi/2 - x)^alpha at the right end; tanh-sinh
  // handles that endpoint behaviour where Gauss-Kronrod stalls.
  const double a = alpha.value();
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0.0;
  const double integral = ts.integrate(
      [a](double x) { return std::pow(std::cos(x), a); }, 0.0, kPi / 2.0,
      std::min(cfg.rel_tol, 1e-12), &err);
  if (!(err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(integral)))) {
    throw QuadratureError("lambda_alpha_quadrature: tolerance not met", integral, err);
  }
  return 2.0 * integral / kPi;
}

double c_alpha(Alpha alpha) {
  const double a = alpha.value();
  if (!(a < 2.0)) throw DomainError("c_alpha requires alpha < 2");
  if (std::abs(a - 1.0) < 1e-9) return 2.0 / kPi;
  return (1.0 - a) / (std::tgamma(2.0 - a) * std::cos(kPi * a / 2.0));
}

double b_alpha(Alpha alpha) {
  const double a = alpha.value();
  return std::pow(2.0, a / 2.0) * std::tgamma(1.0 + a / 2.0);
}

StableConstants stable_constants(Alpha alpha) {
  return {lambda_alpha(alpha), c_alpha(alpha), b_alpha(alpha)};
}

double sas_cf(ScaleParam sigma, Alpha alpha, double s) {
  const double a = alpha.value();
  return std::exp(-std::pow(sigma.value() * std::abs(s), a));
}

double finite_dim_cf(const SpectralDensity& density, Alpha alpha,
                     std::span<const double> times, std::span<const double> s,
                     const QuadratureConfig& cfg) {
  if (times.size() != s.size() || times.empty()) {
    throw DomainError("finite_dim_cf: times and s must have equal length >= 1");
  }
  const double a = alpha.value();
  const std::size_t n = times.size();
  const auto g = [&](double x) {
    double q = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        q += s[j] * s[k] * std::cos((times[k] - times[j]) * x);
      }
    }
    return std::pow(std::abs(q), a / 2.0);
  };
  const double integral = integrate_even(density, g, cfg);
  return std::exp(-lambda_alpha(alpha) * integral);
}

double alpha_sine_transform(const SpectralDensity& density, Alpha alpha,
                            double t, const QuadratureConfig& cfg) {
  if (t < 0.0) throw DomainError("alpha_sine_transform: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double a = alpha.value();
  // Zeros of sin(t x) are kinks of the integrand; split there.
  const double full = integrate_even(
      density, [a, t](double x) { return std::pow(std::abs(std::sin(t * x)), a); },
      cfg, kPi / t);
  return 0.5 * full;
}

double codifference(const SpectralDensity& density, Alpha alpha, double t,
                    const QuadratureConfig& cfg) {
  const double a = alpha.value();
  const double lam = lambda_alpha(alpha);
  // int_R |sin(t x / 2)|^alpha f = 2 T_alpha f(|t|/2).
  const double tail = 2.0 * alpha_sine_transform(density, alpha, std::abs(t) / 2.0, cfg);
  return 2.0 * lam - std::pow(2.0, a) * lam * tail;
}

std::vector<double> sample_sas(Alpha alpha, ScaleParam sigma, Rng& rng,
                               std::size_t count) {
  if (count == 0) throw DomainError("sample_sas: count must be >= 1");
  const double a = alpha.value();
  const double sc = sigma.value();
  std::uniform_real_distribution<double> unif(-kPi / 2.0, kPi / 2.0);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> out(count);
  for (auto& x : out) {
    double u = 0.0;
    do {
      u = unif(rng);
    } while (std::abs(u) >= kPi / 2.0);
    double e = 0.0;
    do {
      e = expo(rng);
    } while (e == 0.0);
    if (std::abs(a - 1.0) < 1e-12) {
      x = sc * std::tan(u);
    } else {
      x = sc * std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
          std::pow(std::cos((1.0 - a) * u) / e, (1.0 - a) / a);
    }
  }
  return out;
}

}  // namespace srh
