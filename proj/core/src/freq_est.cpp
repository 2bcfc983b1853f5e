#include "srh/freq_est.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "srh/errors.hpp"

namespace srh {
namespace {

constexpr double kPi = std::numbers::pi;

double energy(const std::vector<double>& v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

// Least squares with k <= 4 regressors through the normal equations,
// Gaussian elimination with partial pivoting.
template <std::size_t K>
std::array<double, K> least_squares(const std::array<std::vector<double>, K>& cols,
                                    const std::vector<double>& y) {
  std::array<std::array<double, K + 1>, K> m{};
  for (std::size_t r = 0; r < K; ++r) {
    for (std::size_t c = r; c < K; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j) acc += cols[r][j] * cols[c][j];
      m[r][c] = acc;
      m[c][r] = acc;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) acc += cols[r][j] * y[j];
    m[r][K] = acc;
  }
  double scale = 0.0;
  for (std::size_t r = 0; r < K; ++r) scale = std::max(scale, m[r][r]);
  for (std::size_t p = 0; p < K; ++p) {
    std::size_t best = p;
    for (std::size_t r = p + 1; r < K; ++r) {
      if (std::abs(m[r][p]) > std::abs(m[best][p])) best = r;
    }
    std::swap(m[p], m[best]);
    if (!(std::abs(m[p][p]) > 1e-10 * scale)) {
      throw SingularFitError("sinusoid regression: singular normal matrix");
    }
    for (std::size_t r = p + 1; r < K; ++r) {
      const double f = m[r][p] / m[p][p];
      for (std::size_t c = p; c <= K; ++c) m[r][c] -= f * m[p][c];
    }
  }
  std::array<double, K> x{};
  for (std::size_t p = K; p-- > 0;) {
    double acc = m[p][K];
    for (std::size_t c = p + 1; c < K; ++c) acc -= m[p][c] * x[c];
    x[p] = acc / m[p][p];
  }
  return x;
}

void fill_regressors(const PathSample& path, double theta, std::vector<double>& c,
                     std::vector<double>& s) {
  const std::size_t n = path.values.size();
  c.resize(n);
  s.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = path.time(j) * theta;
    c[j] = std::cos(w);
    s[j] = std::sin(w);
  }
}

std::vector<double> component(const PathSample& path, double theta,
                              const SinusoidFit& fit) {
  std::vector<double> out(path.values.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double w = path.time(j) * theta;
    out[j] = fit.alpha_hat * std::cos(w) + fit.beta_hat * std::sin(w);
  }
  return out;
}

// Fit at theta; near the band edges the sine regressor vanishes and only
// the cosine is fitted.
SinusoidFit fit_or_cosine(const PathSample& path, double theta) {
  try {
    if (theta < kPi / path.delta) return fit_sinusoid(path, theta);
  } catch (const SingularFitError&) {
  }
  {
    std::vector<double> c, s;
    fill_regressors(path, theta, c, s);
    const auto coef = least_squares<1>({c}, path.values);
    return {coef[0], 0.0};
  }
}

}  // namespace

void validate(const PeakConfig& config) {
  if (!(config.prominence_threshold > 0.0 && config.prominence_threshold < 1.0)) {
    throw DomainError("prominence_threshold must lie in (0, 1)");
  }
  if (config.min_separation && !(*config.min_separation >= 0.0)) {
    throw DomainError("min_separation must be >= 0");
  }
  if (config.reference_peak && !(*config.reference_peak > 0.0)) {
    throw DomainError("reference_peak must be > 0");
  }
  if (config.max_components < 1) throw DomainError("max_components must be >= 1");
}

double find_largest_peak(const Periodogram& pg, const PathSample& path,
                         const PeakConfig& config, double reference_max) {
  if (pg.values.empty()) throw DomainError("find_largest_peak: empty periodogram");
  const std::size_t j = pg.argmax();
  const double peak = pg.values[j];
  const double ref = reference_max > 0.0 ? reference_max : peak;
  if (!(peak > 0.0) || peak < config.prominence_threshold * ref) {
    throw NoPeakError("no periodogram peak above the prominence threshold");
  }

  const double nyquist = kPi / pg.delta;
  const double cell = 2.0 * kPi / (static_cast<double>(pg.pad_length) * pg.delta);
  double lo = std::max(pg.theta_grid[j] - cell, 0.5 * cell);
  double hi = std::min(pg.theta_grid[j] + cell, nyquist);

  auto value = [&](double th) { return periodogram_at(path, th); };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  for (std::size_t it = 0; it < config.refine_iters; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = value(x1);
    }
  }
  double best = f1 >= f2 ? x1 : x2;
  double best_val = std::max(f1, f2);
  // The search assumes one maximum in the bracket; never return a point
  // worse than the grid maximum.
  const double grid_val = value(pg.theta_grid[j]);
  if (grid_val > best_val) best = pg.theta_grid[j];
  return best;
}

SinusoidFit fit_sinusoid(const PathSample& path, double theta) {
  validate(path);
  if (!(theta > 0.0) || theta >= kPi / path.delta) {
    throw DomainError("fit_sinusoid: theta must lie in (0, pi/delta)");
  }
  std::vector<double> c, s;
  fill_regressors(path, theta, c, s);
  const auto coef = least_squares<2>({c, s}, path.values);
  return {coef[0], coef[1]};
}

PathSample subtract_component(const PathSample& path, double theta,
                              const SinusoidFit& fit) {
  PathSample out = path;
  if (fit.alpha_hat == 0.0 && fit.beta_hat == 0.0) return out;
  const auto comp = component(path, theta, fit);
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] -= comp[j];
  return out;
}

FrequencyEstimates estimate_frequencies(const PathSample& path,
                                        const PeakConfig& config) {
  validate(path);
  validate(config);
  const std::size_t n = path.values.size();
  if (n < 4) throw DomainError("estimate_frequencies: need n >= 4");

  FrequencyEstimates est;
  est.pad_length = config.pad_length > 0 ? config.pad_length : next_pow2(8 * n);
  PeriodogramEngine engine(n, est.pad_length);
  const double min_sep = config.min_separation.value_or(
      4.0 * kPi / (static_cast<double>(est.pad_length) * path.delta));
  const double low_cut = 2.0 * kPi / (static_cast<double>(n) * path.delta);

  est.residual = path;
  Periodogram pg = engine.compute(est.residual);
  est.initial_peak = pg.max_value();
  if (!(est.initial_peak > 0.0)) return est;
  const double reference = config.reference_peak.value_or(est.initial_peak);

  while (est.iterations < config.max_components) {
    if (est.iterations > 0) pg = engine.compute(est.residual);
    double theta = 0.0;
    try {
      theta = find_largest_peak(pg, est.residual, config, reference);
    } catch (const NoPeakError&) {
      break;
    }
    ++est.iterations;

    if (theta < low_cut) {
      est.residual = subtract_component(est.residual, theta,
                                        fit_or_cosine(est.residual, theta));
      continue;
    }

    std::size_t near = est.freqs.size();
    for (std::size_t k = 0; k < est.freqs.size(); ++k) {
      if (std::abs(est.freqs[k] - theta) < min_sep &&
          (near == est.freqs.size() ||
           std::abs(est.freqs[k] - theta) < std::abs(est.freqs[near] - theta))) {
        near = k;
      }
    }

    if (near < est.freqs.size()) {
      // Leakage double of an earlier estimate: put that component back and
      // fit both frequencies jointly; only the earlier one is reported.
      const double prev = est.freqs[near];
      const auto back = component(est.residual, prev, est.coeffs[near]);
      PathSample work = est.residual;
      for (std::size_t j = 0; j < n; ++j) work.values[j] += back[j];
      std::vector<double> c1, s1, c2, s2;
      fill_regressors(work, prev, c1, s1);
      fill_regressors(work, theta, c2, s2);
      try {
        const auto coef = least_squares<4>({c1, s1, c2, s2}, work.values);
        const SinusoidFit kept{coef[0], coef[1]};
        const SinusoidFit extra{coef[2], coef[3]};
        work = subtract_component(work, prev, kept);
        work = subtract_component(work, theta, extra);
        est.coeffs[near] = kept;
        est.residual = std::move(work);
      } catch (const SingularFitError&) {
        // Frequencies numerically indistinguishable: refit the earlier one.
        const SinusoidFit kept = fit_or_cosine(work, prev);
        est.coeffs[near] = kept;
        est.residual = subtract_component(work, prev, kept);
      }
      continue;
    }

    const SinusoidFit fit = fit_or_cosine(est.residual, theta);
    est.residual = subtract_component(est.residual, theta, fit);
    est.freqs.push_back(theta);
    est.coeffs.push_back(fit);
    est.residual_energy.push_back(energy(est.residual.values));
  }
  return est;
}

}  // namespace srh
