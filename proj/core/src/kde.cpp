#include "srh/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "srh/errors.hpp"

namespace srh {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

double sample_sd(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

// Binned pair-distance counts: cnt[k] = number of pairs whose bins are k
// apart, for nb bins of width d over the sample range (scaled by 1.01).
struct PairCounts {
  double d = 0.0;
  std::vector<double> cnt;
};

PairCounts pair_counts(std::span<const double> x, std::size_t nb) {
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  PairCounts pc;
  pc.d = (*mx - *mn) * 1.01 / static_cast<double>(nb);
  std::vector<double> bins(nb, 0.0);
  for (double v : x) {
    auto b = static_cast<std::size_t>(std::floor((v - *mn) / pc.d));
    bins[std::min(b, nb - 1)] += 1.0;
  }
  pc.cnt.assign(nb, 0.0);
  for (std::size_t i = 0; i < nb; ++i) {
    const double w = bins[i];
    if (w == 0.0) continue;
    pc.cnt[0] += 0.5 * w * (w - 1.0);
    for (std::size_t j = 0; j < i; ++j) pc.cnt[i - j] += w * bins[j];
  }
  return pc;
}

// Binned estimates of int f^(4) f and -int f^(6) f with a gaussian pilot.
double phi4(const PairCounts& pc, double n, double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pc.cnt.size(); ++i) {
    double delta = static_cast<double>(i) * pc.d / h;
    delta *= delta;
    if (delta >= 1000.0) break;
    sum += std::exp(-delta / 2.0) * (delta * delta - 6.0 * delta + 3.0) * pc.cnt[i];
  }
  sum = 2.0 * sum + n * 3.0;
  return sum / (n * (n - 1.0) * std::pow(h, 5.0) * kSqrt2Pi);
}

double phi6(const PairCounts& pc, double n, double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pc.cnt.size(); ++i) {
    double delta = static_cast<double>(i) * pc.d / h;
    delta *= delta;
    if (delta >= 1000.0) break;
    sum += std::exp(-delta / 2.0) *
           (delta * delta * delta - 15.0 * delta * delta + 45.0 * delta - 15.0) *
           pc.cnt[i];
  }
  sum = 2.0 * sum - 15.0 * n;
  return sum / (n * (n - 1.0) * std::pow(h, 7.0) * kSqrt2Pi);
}

}  // namespace

Kernel Kernel::from_name(std::string_view name) {
  if (name == "gaussian") return Kernel(KernelKind::gaussian);
  if (name == "epanechnikov") return Kernel(KernelKind::epanechnikov);
  if (name == "triangle") return Kernel(KernelKind::triangle);
  throw DomainError("unknown kernel '" + std::string(name) +
                    "' (expected gaussian, epanechnikov or triangle)");
}

std::string Kernel::name() const {
  switch (kind_) {
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::epanechnikov: return "epanechnikov";
    case KernelKind::triangle: return "triangle";
  }
  return "?";
}

double Kernel::operator()(double u) const {
  switch (kind_) {
    case KernelKind::gaussian:
      return std::exp(-0.5 * u * u) / kSqrt2Pi;
    case KernelKind::epanechnikov:
      return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case KernelKind::triangle:
      return std::abs(u) <= 1.0 ? 1.0 - std::abs(u) : 0.0;
  }
  return 0.0;
}

double Kernel::second_moment() const {
  switch (kind_) {
    case KernelKind::gaussian: return 1.0;
    case KernelKind::epanechnikov: return 0.2;
    case KernelKind::triangle: return 1.0 / 6.0;
  }
  return 0.0;
}

double Kernel::roughness() const {
  switch (kind_) {
    case KernelKind::gaussian: return 1.0 / (2.0 * std::sqrt(kPi));
    case KernelKind::epanechnikov: return 0.6;
    case KernelKind::triangle: return 2.0 / 3.0;
  }
  return 0.0;
}

double Kernel::support_radius() const {
  return kind_ == KernelKind::gaussian ? std::numeric_limits<double>::infinity() : 1.0;
}

double kde_eval(const DensityEstimate& est, double x) {
  const auto& pts = est.points;
  if (pts.empty()) return 0.0;
  const double h = est.bandwidth;
  const double radius = est.kernel.support_radius();
  // Gaussian tails beyond 40 h underflow; skip them.
  const double reach = std::isfinite(radius) ? radius * h : 40.0 * h;
  auto first = pts.begin();
  auto last = pts.end();
  if (std::is_sorted(pts.begin(), pts.end())) {
    first = std::lower_bound(pts.begin(), pts.end(), x - reach);
    last = std::upper_bound(first, pts.end(), x + reach);
  }
  double acc = 0.0;
  for (auto it = first; it != last; ++it) {
    if (std::abs(x - *it) <= reach) acc += est.kernel((x - *it) / h);
  }
  return acc / (static_cast<double>(pts.size()) * h);
}

double quantile(std::vector<double> samples, double p) {
  if (samples.empty()) throw DomainError("quantile: empty sample");
  std::sort(samples.begin(), samples.end());
  const double pos = p * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return samples[lo] + w * (samples[hi] - samples[lo]);
}

double bandwidth_silverman(std::span<const double> samples) {
  if (samples.size() < 2) throw DomainError("bandwidth_silverman: need >= 2 samples");
  const double sd = sample_sd(samples);
  if (!(sd > 0.0)) throw EstimationError("bandwidth_silverman: degenerate sample");
  std::vector<double> v(samples.begin(), samples.end());
  const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
}

SheatherJonesResult bandwidth_sheather_jones(std::span<const double> samples) {
  if (samples.size() < 8) {
    throw DomainError("bandwidth_sheather_jones: need >= 8 samples");
  }
  const double h_silv = bandwidth_silverman(samples);
  const double n = static_cast<double>(samples.size());
  std::vector<double> v(samples.begin(), samples.end());
  const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
  const double sd = sample_sd(samples);
  const double scale = iqr > 0.0 ? std::min(sd, iqr / 1.349) : sd;

  const PairCounts pc = pair_counts(samples, 1000);
  const double a = 1.24 * scale * std::pow(n, -1.0 / 7.0);
  const double b = 1.23 * scale * std::pow(n, -1.0 / 9.0);
  const double c1 = 1.0 / (2.0 * std::sqrt(kPi) * n);
  const double td = -phi6(pc, n, b);
  const double sd_a = phi4(pc, n, a);
  if (!(td > 0.0) || !(sd_a > 0.0) || !std::isfinite(td)) {
    return {h_silv, true};
  }
  const double alph2 = 1.357 * std::pow(sd_a / td, 1.0 / 7.0);
  auto fsd = [&](double h) {
    const double s = phi4(pc, n, alph2 * std::pow(h, 5.0 / 7.0));
    if (!(s > 0.0)) return -h;  // curvature estimate collapsed; treat as too wide
    return std::pow(c1 / s, 0.2) - h;
  };

  double lo = std::log(h_silv / 100.0);
  double hi = std::log(h_silv * 100.0);
  double flo = fsd(std::exp(lo));
  double fhi = fsd(std::exp(hi));
  if (!(flo > 0.0 && fhi < 0.0)) return {h_silv, true};
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fsd(std::exp(mid));
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {std::exp(0.5 * (lo + hi)), false};
}

double optimal_bandwidth_oracle(const Kernel& kernel, const SpectralDensity& density,
                                std::size_t n_samples, const QuadratureConfig& cfg) {
  if (!density.twice_differentiable()) {
    throw DomainError("optimal_bandwidth_oracle: density '" + density.name() +
                      "' is not twice differentiable");
  }
  if (n_samples == 0) throw DomainError("optimal_bandwidth_oracle: N must be >= 1");
  // R((2f)'') over [0, inf) = 4 int_0^inf f''(x)^2 dx.
  const double curvature =
      4.0 * integrate(
                [&](double x) {
                  const double d2 = density.second_derivative(x);
                  return d2 * d2;
                },
                density.support_lo(), density.cutoff(cfg), cfg);
  const double mu2 = kernel.second_moment();
  return std::pow(kernel.roughness() /
                      (mu2 * mu2 * curvature * static_cast<double>(n_samples)),
                  0.2);
}

BandwidthRule BandwidthRule::parse(std::string_view text) {
  if (text == "silverman") return {Kind::silverman, 0.0};
  if (text == "sj" || text == "sheather-jones") return {Kind::sheather_jones, 0.0};
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string num(text.substr(prefix.size()));
    std::size_t used = 0;
    double h = 0.0;
    try {
      h = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != num.size() || !(h > 0.0)) {
      throw DomainError("fixed bandwidth must be a positive number: '" + num + "'");
    }
    return {Kind::fixed, h};
  }
  throw DomainError("unknown bandwidth rule '" + std::string(text) +
                    "' (expected silverman, sj or fixed:H)");
}

std::string BandwidthRule::to_string() const {
  switch (kind) {
    case Kind::silverman: return "silverman";
    case Kind::sheather_jones: return "sj";
    case Kind::fixed: return "fixed:" + std::to_string(value);
  }
  return "?";
}

SpectralDensityEstimate::SpectralDensityEstimate(DensityEstimate kde, bool reflect,
                                                 bool bandwidth_fell_back)
    : kde_(std::move(kde)), reflect_(reflect), fell_back_(bandwidth_fell_back) {
  if (!(kde_.bandwidth > 0.0)) throw DomainError("bandwidth must be > 0");
  // Sorted points let kde_eval visit only the kernels that reach x.
  std::sort(kde_.points.begin(), kde_.points.end());
}

double SpectralDensityEstimate::operator()(double x) const {
  const double ax = std::abs(x);
  if (reflect_) return 0.5 * (kde_eval(kde_, ax) + kde_eval(kde_, -ax));
  return 0.5 * kde_eval(kde_, ax);
}

std::vector<double> SpectralDensityEstimate::export_grid(std::size_t points) const {
  if (points < 2) throw DomainError("export_grid: need >= 2 points");
  const double q = quantile(kde_.points, 0.995) + 3.0 * kde_.bandwidth;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = -q + 2.0 * q * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

SpectralDensityEstimate estimate_spectral_density(std::span<const double> abs_freqs,
                                                  const Kernel& kernel,
                                                  const BandwidthRule& rule,
                                                  bool reflect) {
  if (abs_freqs.size() < 2) {
    throw EstimationError("spectral density estimate: need >= 2 frequencies");
  }
  for (double z : abs_freqs) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
      throw DomainError("spectral density estimate: frequencies must be >= 0");
    }
  }
  DensityEstimate est{std::vector<double>(abs_freqs.begin(), abs_freqs.end()),
                      kernel, 1.0};
  bool fell_back = false;
  switch (rule.kind) {
    case BandwidthRule::Kind::silverman:
      est.bandwidth = bandwidth_silverman(abs_freqs);
      break;
    case BandwidthRule::Kind::sheather_jones:
      if (abs_freqs.size() < 8) {
        est.bandwidth = bandwidth_silverman(abs_freqs);
        fell_back = true;
      } else {
        const auto sj = bandwidth_sheather_jones(abs_freqs);
        est.bandwidth = sj.bandwidth;
        fell_back = sj.fell_back;
      }
      break;
    case BandwidthRule::Kind::fixed:
      est.bandwidth = rule.value;
      break;
  }
  return SpectralDensityEstimate(std::move(est), reflect, fell_back);
}

SpectralDensityEstimate estimate_spectral_density(const FrequencyEstimates& freqs,
                                                  const Kernel& kernel,
                                                  const BandwidthRule& rule,
                                                  bool reflect) {
  return estimate_spectral_density(std::span<const double>(freqs.freqs), kernel, rule,
                                   reflect);
}

double l1_distance(const SpectralDensityEstimate& estimate,
                   const SpectralDensity& density, std::size_t grid_points) {
  if (grid_points < 3) grid_points = 3;
  if (grid_points % 2 == 0) ++grid_points;
  QuadratureConfig cfg;
  const double reach = quantile(estimate.kde().points, 1.0) +
                       (std::isfinite(estimate.kde().kernel.support_radius())
                            ? estimate.bandwidth()
                            : 10.0 * estimate.bandwidth());
  const double upper = std::max(reach, density.cutoff(cfg));
  const double step = upper / static_cast<double>(grid_points - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = step * static_cast<double>(i);
    const double w = (i == 0 || i + 1 == grid_points) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * std::abs(estimate(x) - density.pdf(x));
  }
  return 2.0 * acc * step / 3.0;
}

}  // namespace srh
