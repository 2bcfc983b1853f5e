#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "srh/spectra.hpp"
#include "srh/stable.hpp"

namespace srh {

struct FixedTruncation {
  std::size_t terms = 10'000;
};

// Stop at the first k with Gamma_k^(-1/alpha) < epsilon * Gamma_1^(-1/alpha),
// but never keep more than max_terms.
struct TailTruncation {
  double epsilon = 1e-4;
  std::size_t max_terms = 1u << 20;
};

using TruncationRule = std::variant<FixedTruncation, TailTruncation>;

/// Truncated LePage series of a stationary real harmonizable SaS process:
///   X(t) = sum_k nu_k (G1_k cos(t Z_k) + G2_k sin(t Z_k))
///        = sum_k R_k cos(Theta_k + t Z_k),
/// nu_k = (C_alpha / b_alpha)^(1/alpha) Gamma_k^(-1/alpha),
/// R_k = nu_k sqrt(G1^2 + G2^2), Theta_k = atan2(-G2_k, G1_k) mod 2pi.
/// Immutable once built.
class HarmonizableModel {
 public:
  HarmonizableModel(Alpha alpha, std::string density_name, std::uint64_t seed,
                    std::vector<double> gammas, std::vector<double> g1,
                    std::vector<double> g2, std::vector<double> freqs);

  Alpha alpha() const { return alpha_; }
  const std::string& density_name() const { return density_name_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return gammas_.size(); }

  const std::vector<double>& gammas() const { return gammas_; }
  const std::vector<double>& g1() const { return g1_; }
  const std::vector<double>& g2() const { return g2_; }
  const std::vector<double>& freqs() const { return freqs_; }
  const std::vector<double>& amps() const { return amps_; }
  const std::vector<double>& phases() const { return phases_; }
  const std::vector<double>& scales() const { return nu_; }

  /// (C_alpha / b_alpha)^(1/alpha), the common factor of nu_k.
  double lepage_factor() const { return factor_; }

  /// X(t) from the rectangular form.
  double value_at(double t) const;

 private:
  Alpha alpha_;
  std::string density_name_;
  std::uint64_t seed_;
  double factor_;
  std::vector<double> gammas_, g1_, g2_, freqs_;
  std::vector<double> nu_, amps_, phases_;
};

/// Equidistant observations x(j) = X(j delta), j = 1..n.
struct PathSample {
  double delta = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double time(std::size_t index) const {
    return static_cast<double>(index + 1) * delta;
  }
};

/// Checks delta > 0, n >= 2 and finite values.
void validate(const PathSample& path);

HarmonizableModel generate_model(Alpha alpha, const SpectralDensity& density,
                                 TruncationRule rule, std::uint64_t seed);

PathSample sample_path(const HarmonizableModel& model, double delta,
                       std::size_t n);
PathSample sample_path_polar(const HarmonizableModel& model, double delta,
                             std::size_t n);

/// X at arbitrary times (rectangular form).
std::vector<double> sample_times(const HarmonizableModel& model,
                                 std::span<const double> times);

/// Conditional autocovariance given (Gamma_k, Z_k):
/// (C_alpha/b_alpha)^(2/alpha) sum_k Gamma_k^(-2/alpha) cos(t Z_k).
double theoretical_acv(const HarmonizableModel& model, double t);

std::string model_to_json(const HarmonizableModel& model);
HarmonizableModel model_from_json(const std::string& text);

}  // namespace srh
