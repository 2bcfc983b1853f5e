#include "srh/multipath.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "srh/errors.hpp"
#include "srh/random.hpp"

namespace srh {
namespace {

constexpr std::size_t kProbes = 10;

// Values of sum_k amp_k cos(theta_k + i delta z_k) on i = 0..n-1, advancing
// each harmonic by complex rotation and resyncing every 64 steps.
std::vector<double> equidistant_values(std::span<const double> amps,
                                       std::span<const double> phases,
                                       std::span<const double> freqs, double delta,
                                       std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const std::complex<double> step = std::polar(1.0, delta * freqs[k]);
    std::complex<double> cur;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) {
        cur = std::polar(amps[k], phases[k] + static_cast<double>(i) * delta * freqs[k]);
      } else {
        cur *= step;
      }
      out[i] += cur.real();
    }
  }
  return out;
}

struct EcfPoints {
  std::vector<double> x;  // log s
  std::vector<double> y;  // log(-log|phi|^2)
};

EcfPoints ecf_points(std::span<const double> samples, double probe_scale) {
  EcfPoints pts;
  const double m = static_cast<double>(samples.size());
  for (std::size_t k = 1; k <= kProbes; ++k) {
    const double s = 0.1 * static_cast<double>(k) * probe_scale;
    double c = 0.0, sn = 0.0;
    for (double v : samples) {
      c += std::cos(s * v);
      sn += std::sin(s * v);
    }
    const double mod2 = (c * c + sn * sn) / (m * m);
    if (!(mod2 > 0.0) || !(mod2 < 1.0)) {
      throw EstimationError("degenerate empirical characteristic function at probe s = " +
                            std::to_string(s));
    }
    pts.x.push_back(std::log(s));
    pts.y.push_back(std::log(-std::log(mod2)));
  }
  return pts;
}

StableFit fit_line(const EcfPoints& pts) {
  const double n = static_cast<double>(pts.x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < pts.x.size(); ++i) {
    mx += pts.x[i];
    my += pts.y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < pts.x.size(); ++i) {
    sxy += (pts.x[i] - mx) * (pts.y[i] - my);
    sxx += (pts.x[i] - mx) * (pts.x[i] - mx);
  }
  double alpha = sxy / sxx;
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw EstimationError("stable fit: non-positive characteristic exponent");
  }
  alpha = std::min(alpha, 2.0);
  const double intercept = my - alpha * mx;
  return {alpha, std::exp((intercept - std::numbers::ln2) / alpha)};
}

void check_samples(std::span<const double> samples) {
  if (samples.size() < 50) {
    throw DomainError("estimate_stable_params: need >= 50 samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw DomainError("estimate_stable_params: non-finite sample");
  }
}

// Half the interquartile range; the quartiles of SaS(1) stay within a few
// percent of +-1 for alpha in [1, 2], so this is a rough scale estimate.
double quartile_scale(std::span<const double> samples) {
  std::vector<double> v(samples.begin(), samples.end());
  const auto q = [&](double p) {
    const auto k = static_cast<std::size_t>(p * static_cast<double>(v.size() - 1));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
  };
  const double s = 0.5 * (q(0.75) - q(0.25));
  if (!(s > 0.0)) throw EstimationError("stable fit: zero interquartile range");
  return s;
}

// The probes are first standardized by the quartile scale, then rescaled
// once by the sigma of that first fit.
EcfPoints refined_points(std::span<const double> samples) {
  const StableFit first = fit_line(ecf_points(samples, 1.0 / quartile_scale(samples)));
  return ecf_points(samples, 1.0 / first.sigma_hat);
}

double alpha_sine_from_fit(double alpha, double sigma) {
  return std::pow(sigma, alpha) /
         (std::pow(2.0, alpha + 1.0) * lambda_alpha(Alpha(alpha)));
}

}  // namespace

void validate(const EnsembleSample& ensemble) {
  if (!(ensemble.delta > 0.0)) throw DomainError("ensemble: delta must be > 0");
  if (ensemble.paths.size() < 2) throw DomainError("ensemble: need >= 2 paths");
  const std::size_t n = ensemble.paths.front().size();
  if (n < 2) throw DomainError("ensemble: need >= 2 points per path");
  for (const auto& p : ensemble.paths) {
    if (p.size() != n) throw DomainError("ensemble: paths differ in length");
  }
}

EnsembleSample simulate_ensemble(Alpha alpha, const SpectralDensity& density,
                                 const EnsembleConfig& config, std::uint64_t seed) {
  if (config.paths < 2) throw DomainError("simulate_ensemble: need >= 2 paths");
  if (config.points < 2) throw DomainError("simulate_ensemble: need >= 2 points");
  if (!(config.t_max > 0.0)) throw DomainError("simulate_ensemble: t_max must be > 0");
  EnsembleSample ens;
  ens.delta = config.t_max / static_cast<double>(config.points - 1);
  ens.paths.reserve(config.paths);
  Rng seeder = make_stream(seed, 0);
  for (std::size_t l = 0; l < config.paths; ++l) {
    const std::uint64_t path_seed = seeder();
    if (alpha.value() < 2.0) {
      const HarmonizableModel model =
          generate_model(alpha, density, config.truncation, path_seed);
      ens.paths.push_back(equidistant_values(model.amps(), model.phases(), model.freqs(),
                                             ens.delta, config.points));
    } else {
      if (config.gaussian_terms == 0) {
        throw DomainError("simulate_ensemble: gaussian_terms must be >= 1");
      }
      Rng g = make_stream(path_seed, 1);
      std::normal_distribution<double> normal;
      Rng zrng = make_stream(path_seed, 2);
      const std::vector<double> z = sample_frequencies(density, zrng, config.gaussian_terms);
      const double w = 1.0 / std::sqrt(static_cast<double>(config.gaussian_terms));
      std::vector<double> amps(z.size()), phases(z.size());
      for (std::size_t k = 0; k < z.size(); ++k) {
        const double a = normal(g);
        const double b = normal(g);
        amps[k] = w * std::hypot(a, b);
        phases[k] = std::atan2(-b, a);
      }
      ens.paths.push_back(equidistant_values(amps, phases, z, ens.delta, config.points));
    }
  }
  return ens;
}

StableFit estimate_stable_params(std::span<const double> samples) {
  check_samples(samples);
  return fit_line(refined_points(samples));
}

std::vector<double> lag_increments(const EnsembleSample& ensemble, std::size_t t_index) {
  validate(ensemble);
  if (t_index >= ensemble.points()) {
    throw DomainError("lag index " + std::to_string(t_index) + " outside the grid");
  }
  std::vector<double> inc;
  inc.reserve(ensemble.path_count());
  for (const auto& p : ensemble.paths) inc.push_back(p[t_index] - p[0]);
  return inc;
}

double estimate_alpha_sine(const EnsembleSample& ensemble, std::size_t t_index) {
  const std::vector<double> inc = lag_increments(ensemble, t_index);
  if (t_index == 0) return 0.0;
  const StableFit fit = estimate_stable_params(inc);
  return alpha_sine_from_fit(fit.alpha_hat, fit.sigma_hat);
}

AlphaSineEstimates estimate_alpha_sine_all(const EnsembleSample& ensemble, bool pooled) {
  validate(ensemble);
  const std::size_t n = ensemble.points();
  AlphaSineEstimates out;
  out.half_times.resize(n);
  out.values.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) out.half_times[i] = 0.5 * ensemble.time(i);
  out.values[0] = 0.0;

  std::vector<std::optional<EcfPoints>> pts(n);
  for (std::size_t i = 1; i < n; ++i) {
    try {
      const std::vector<double> inc = lag_increments(ensemble, i);
      check_samples(inc);
      pts[i] = refined_points(inc);
    } catch (const std::exception& e) {
      out.failures.push_back("t_index " + std::to_string(i) + ": " + e.what());
    }
  }

  if (!pooled) {
    double alpha_sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (!pts[i]) continue;
      try {
        const StableFit fit = fit_line(*pts[i]);
        out.values[i] = alpha_sine_from_fit(fit.alpha_hat, fit.sigma_hat);
        alpha_sum += fit.alpha_hat;
        ++used;
      } catch (const std::exception& e) {
        out.failures.push_back("t_index " + std::to_string(i) + ": " + e.what());
      }
    }
    out.pooled_alpha = used > 0 ? alpha_sum / static_cast<double>(used) : 0.0;
    return out;
  }

  // Common slope across lags, lag-specific intercepts.
  double sxy = 0.0, sxx = 0.0;
  std::vector<double> mx(n, 0.0), my(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (!pts[i]) continue;
    const auto& p = *pts[i];
    for (std::size_t k = 0; k < p.x.size(); ++k) {
      mx[i] += p.x[k];
      my[i] += p.y[k];
    }
    mx[i] /= static_cast<double>(p.x.size());
    my[i] /= static_cast<double>(p.x.size());
    for (std::size_t k = 0; k < p.x.size(); ++k) {
      sxy += (p.x[k] - mx[i]) * (p.y[k] - my[i]);
      sxx += (p.x[k] - mx[i]) * (p.x[k] - mx[i]);
    }
  }
  if (!(sxx > 0.0)) {
    out.failures.push_back("pooled fit: no usable lags");
    return out;
  }
  double alpha = sxy / sxx;
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    out.failures.push_back("pooled fit: non-positive characteristic exponent");
    return out;
  }
  alpha = std::min(alpha, 2.0);
  out.pooled_alpha = alpha;
  for (std::size_t i = 1; i < n; ++i) {
    if (!pts[i]) continue;
    const double sigma = std::exp((my[i] - alpha * mx[i] - std::numbers::ln2) / alpha);
    out.values[i] = alpha_sine_from_fit(alpha, sigma);
  }
  return out;
}

}  // namespace srh
