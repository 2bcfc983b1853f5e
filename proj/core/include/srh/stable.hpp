#pragma once

#include <span>
#include <vector>

#include "srh/quadrature.hpp"
#include "srh/random.hpp"
#include "srh/spectra.hpp"

namespace srh {

/// Index of stability, 0 < alpha <= 2.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Scale parameter sigma > 0 of a symmetric stable law.
class ScaleParam {
 public:
  explicit ScaleParam(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

struct StableConstants {
  double lambda_alpha;
  double c_alpha;
  double b_alpha;
};

// lambda_alpha = (1/2pi) int_0^{2pi} |cos x|^alpha dx. Evaluated through
// Gamma((alpha+1)/2) / (sqrt(pi) Gamma(alpha/2 + 1)); the quadrature form
// below is the reference the closed form is tested against.
double lambda_alpha(Alpha alpha);
double lambda_alpha_quadrature(Alpha alpha, const QuadratureConfig& cfg = {});

/// LePage constant (int_0^inf x^-alpha sin x dx)^-1; requires alpha < 2.
double c_alpha(Alpha alpha);

/// 2^(alpha/2) Gamma(1 + alpha/2).
double b_alpha(Alpha alpha);

StableConstants stable_constants(Alpha alpha);

/// exp(-sigma^alpha |s|^alpha).
double sas_cf(ScaleParam sigma, Alpha alpha, double s);

/// Joint characteristic function E exp(i sum s_j X(t_j)) of the process
/// with control density `density` (unit mass).
double finite_dim_cf(const SpectralDensity& density, Alpha alpha,
                     std::span<const double> times, std::span<const double> s,
                     const QuadratureConfig& cfg = {});

/// tau(t) = 2 sigma^alpha - 2^alpha lambda_alpha int |sin(tx/2)|^alpha f(x) dx
/// with sigma^alpha = lambda_alpha.
double codifference(const SpectralDensity& density, Alpha alpha, double t,
                    const QuadratureConfig& cfg = {});

/// T_alpha f(t) = int_0^inf |sin(t x)|^alpha f(x) dx, t >= 0.
double alpha_sine_transform(const SpectralDensity& density, Alpha alpha,
                            double t, const QuadratureConfig& cfg = {});

/// i.i.d. SaS(sigma) variates (Chambers-Mallows-Stuck, symmetric case).
std::vector<double> sample_sas(Alpha alpha, ScaleParam sigma, Rng& rng,
                               std::size_t count);

}  // namespace srh
