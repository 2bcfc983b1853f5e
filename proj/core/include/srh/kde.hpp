#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srh/freq_est.hpp"
#include "srh/quadrature.hpp"
#include "srh/spectra.hpp"

namespace srh {

enum class KernelKind { gaussian, epanechnikov, triangle };

class Kernel {
 public:
  explicit Kernel(KernelKind kind = KernelKind::gaussian) : kind_(kind) {}
  static Kernel from_name(std::string_view name);

  KernelKind kind() const { return kind_; }
  std::string name() const;
  double operator()(double u) const;

  double second_moment() const;  // int t^2 k(t) dt
  double roughness() const;      // int k(t)^2 dt
  double support_radius() const; // inf for the gaussian

 private:
  KernelKind kind_;
};

struct DensityEstimate {
  std::vector<double> points;
  Kernel kernel;
  double bandwidth = 1.0;
};

/// (1 / (N h)) sum_k kernel((x - p_k) / h).
double kde_eval(const DensityEstimate& est, double x);

/// 0.9 min(sd, IQR / 1.34) N^(-1/5).
double bandwidth_silverman(std::span<const double> samples);

struct SheatherJonesResult {
  double bandwidth = 0.0;
  bool fell_back = false;  // no root in the bracket; Silverman returned
};

/// Solve-the-equation plug-in bandwidth for a gaussian kernel (two-stage
/// pilot, binned pair counts on 1000 bins), root by bisection on log h in
/// [h_silverman / 100, 100 h_silverman].
SheatherJonesResult bandwidth_sheather_jones(std::span<const double> samples);

/// MISE-optimal bandwidth for N samples of |Z| (density 2f on [0, inf)):
/// [R(k) / (mu2(k)^2 R((2f)'') N)]^(1/5). Requires a C^2 density.
double optimal_bandwidth_oracle(const Kernel& kernel,
                                const SpectralDensity& density,
                                std::size_t n_samples,
                                const QuadratureConfig& cfg = {});

struct BandwidthRule {
  enum class Kind { silverman, sheather_jones, fixed };
  Kind kind = Kind::sheather_jones;
  double value = 0.0;  // for fixed

  /// "silverman", "sj" or "fixed:H".
  static BandwidthRule parse(std::string_view text);
  std::string to_string() const;
};

/// Symmetric estimate of the spectral density from |Z| estimates.
/// Default: x -> kde(|x|) / 2. With `reflect`, the kde of {+-Z} is used,
/// which removes the boundary deficit at 0.
class SpectralDensityEstimate {
 public:
  SpectralDensityEstimate(DensityEstimate kde, bool reflect, bool bandwidth_fell_back);

  double operator()(double x) const;
  const DensityEstimate& kde() const { return kde_; }
  double bandwidth() const { return kde_.bandwidth; }
  bool reflect() const { return reflect_; }
  bool bandwidth_fell_back() const { return fell_back_; }

  /// Export grid: 512 points on [-q, q], q = 99.5th percentile + 3 h.
  std::vector<double> export_grid(std::size_t points = 512) const;

 private:
  DensityEstimate kde_;
  bool reflect_;
  bool fell_back_;
};

SpectralDensityEstimate estimate_spectral_density(std::span<const double> abs_freqs,
                                                  const Kernel& kernel,
                                                  const BandwidthRule& rule,
                                                  bool reflect = false);

SpectralDensityEstimate estimate_spectral_density(const FrequencyEstimates& freqs,
                                                  const Kernel& kernel,
                                                  const BandwidthRule& rule,
                                                  bool reflect = false);

/// int_R |estimate(x) - f(x)| dx by composite Simpson on a fine grid.
double l1_distance(const SpectralDensityEstimate& estimate,
                   const SpectralDensity& density, std::size_t grid_points = 20001);

/// Sample quantile (linear interpolation between order statistics).
double quantile(std::vector<double> samples, double p);

}  // namespace srh
