#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "srh/periodogram.hpp"
#include "srh/simulate.hpp"

namespace srh {

struct PeakConfig {
  // Stop once the largest residual peak falls below this fraction of the
  // initial periodogram maximum.
  double prominence_threshold = 0.005;
  // Peak height the threshold is relative to. Unset: the maximum of the
  // first periodogram. Set it to continue an earlier extraction on its
  // residual with the same stopping level.
  std::optional<double> reference_peak;
  // Estimates closer than this to an earlier one are refit jointly with it
  // instead of being reported. Unset: 4 pi / (pad_length delta).
  std::optional<double> min_separation;
  std::size_t max_components = 1000;
  std::size_t refine_iters = 40;
  // 0 selects the smallest power of two >= 8 n.
  std::size_t pad_length = 0;
};

void validate(const PeakConfig& config);

struct SinusoidFit {
  double alpha_hat = 0.0;  // cosine coefficient
  double beta_hat = 0.0;   // sine coefficient
};

struct FrequencyEstimates {
  std::vector<double> freqs;             // extraction order
  std::vector<SinusoidFit> coeffs;       // per reported frequency
  std::vector<double> residual_energy;   // sum of squares after each report
  std::size_t iterations = 0;            // subtractions performed
  double initial_peak = 0.0;             // max of the first periodogram
  std::size_t pad_length = 0;
  PathSample residual;                   // what is left after extraction
};

/// Grid argmax of `pg`, refined by golden-section search of
/// periodogram_at(path, .) within one grid cell on either side.
/// Throws NoPeakError when the grid maximum is not positive or is below
/// prominence_threshold * reference_max (reference_max <= 0: use the grid
/// maximum itself).
double find_largest_peak(const Periodogram& pg, const PathSample& path,
                         const PeakConfig& config, double reference_max = 0.0);

/// Least squares of x(j) on {cos(j delta theta), sin(j delta theta)}.
SinusoidFit fit_sinusoid(const PathSample& path, double theta);

PathSample subtract_component(const PathSample& path, double theta,
                              const SinusoidFit& fit);

FrequencyEstimates estimate_frequencies(const PathSample& path,
                                        const PeakConfig& config = {});

}  // namespace srh
