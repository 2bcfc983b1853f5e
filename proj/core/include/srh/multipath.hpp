#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srh/simulate.hpp"

namespace srh {

/// L independent paths observed at t_i = i * delta, i = 0..n-1 (t_0 = 0 included).
struct EnsembleSample {
  double delta = 1.0;
  std::vector<std::vector<double>> paths;

  std::size_t path_count() const { return paths.size(); }
  std::size_t points() const { return paths.empty() ? 0 : paths.front().size(); }
  double time(std::size_t index) const { return static_cast<double>(index) * delta; }
};

void validate(const EnsembleSample& ensemble);

struct EnsembleConfig {
  std::size_t paths = 100;
  double t_max = 10.0;
  std::size_t points = 101;  // including t = 0
  TruncationRule truncation = FixedTruncation{10'000};
  std::size_t gaussian_terms = 4096;  // alpha = 2 only
};

/// Paths of independent models. For alpha < 2 each path is a truncated LePage
/// series; for alpha = 2 the process is Gaussian with covariance
/// int cos(s x) f(x) dx and is drawn as a normalized sum of `gaussian_terms`
/// random-frequency harmonics.
EnsembleSample simulate_ensemble(Alpha alpha, const SpectralDensity& density,
                                 const EnsembleConfig& config, std::uint64_t seed);

struct StableFit {
  double alpha_hat = 0.0;
  double sigma_hat = 0.0;
};

/// Empirical-characteristic-function regression of log(-log|phi(s)|^2) on
/// log s over s = 0.1..1.0, with one rescaling pass of the probes by 1/sigma.
StableFit estimate_stable_params(std::span<const double> samples);

/// sigma_hat^alpha_hat / (2^(alpha_hat + 1) lambda_alpha_hat) from the lag
/// increments X(t_i) - X(t_0); estimates the alpha-sine transform at t_i / 2.
double estimate_alpha_sine(const EnsembleSample& ensemble, std::size_t t_index);

struct AlphaSineEstimates {
  std::vector<double> half_times;  // t_i / 2
  std::vector<std::optional<double>> values;  // empty where the fit failed
  std::vector<std::string> failures;          // one entry per failed lag
  double pooled_alpha = 0.0;
};

/// Every grid point. With `pooled`, a single alpha is fitted jointly over all
/// lags (common slope, lag-specific intercepts); otherwise per lag.
AlphaSineEstimates estimate_alpha_sine_all(const EnsembleSample& ensemble, bool pooled);

/// Lag increments X^(l)(t_i) - X^(l)(t_0), l = 1..L.
std::vector<double> lag_increments(const EnsembleSample& ensemble, std::size_t t_index);

}  // namespace srh
