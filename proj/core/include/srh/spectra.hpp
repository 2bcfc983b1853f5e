#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srh/quadrature.hpp"
#include "srh/random.hpp"

namespace srh {

/// Symmetric probability density of the control measure, i.e. the law of
/// the random frequencies Z_k. The density is stored for x >= 0 and
/// mirrored, so symmetry holds by construction.
class SpectralDensity {
 public:
  using HalfPdf = std::function<double(double)>;
  using Sampler = std::function<double(Rng&)>;

  struct Shape {
    double support_lo = 0.0;  // inner edge of the support of |x|
    double support_hi = std::numeric_limits<double>::infinity();
    double default_cutoff = 40.0;  // integration limit when support_hi = inf
    std::vector<double> kinks;     // |x| where the pdf is not smooth
    HalfPdf second_derivative;     // empty when the pdf is not C^2
  };

  SpectralDensity(std::string name, HalfPdf half_pdf, Sampler sampler,
                  Shape shape);

  const std::string& name() const { return name_; }
  double pdf(double x) const;
  double sample(Rng& rng) const { return sampler_(rng); }

  double support_lo() const { return shape_.support_lo; }
  double support_hi() const { return shape_.support_hi; }
  bool bounded() const;
  // Upper limit for integrals over |x|.
  double cutoff(const QuadratureConfig& cfg) const;
  const std::vector<double>& kinks() const { return shape_.kinks; }

  bool twice_differentiable() const {
    return static_cast<bool>(shape_.second_derivative);
  }
  double second_derivative(double x) const;

 private:
  std::string name_;
  HalfPdf half_pdf_;
  Sampler sampler_;
  Shape shape_;
};

/// One of the example densities f1..f4 (normalized to unit mass).
SpectralDensity builtin_density(std::string_view name);

/// "f1".."f4", or "table:PATH" for a tabulated file.
SpectralDensity density_from_spec(std::string_view spec);

/// Piecewise-linear density from a symmetric, strictly increasing grid.
/// The table is renormalized to unit mass.
SpectralDensity tabulated_density(std::string name, std::span<const double> x,
                                  std::span<const double> fx);

/// Two-column text file "x f(x)" (whitespace or comma separated, '#'
/// comments allowed).
SpectralDensity load_tabulated_density(const std::filesystem::path& path);

double pdf_eval(const SpectralDensity& density, double x);

/// Density of |Z| at x >= 0, i.e. 2 f(x).
double abs_density(const SpectralDensity& density, double x);

std::vector<double> sample_frequencies(const SpectralDensity& density,
                                       Rng& rng, std::size_t count);

/// integral over R of g(x) f(x) dx for an even integrand g. `kink_period`
/// > 0 adds breakpoints at its multiples (e.g. pi/t for |sin(t x)|^alpha).
double integrate_even(const SpectralDensity& density, const Integrand& g,
                      const QuadratureConfig& cfg = {},
                      double kink_period = 0.0);

}  // namespace srh
