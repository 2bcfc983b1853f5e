#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace srh {

struct QuadratureConfig {
  std::size_t max_subdivisions = 4000;
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  // Upper integration limit for densities with unbounded support. A value
  // <= 0 selects the density's own cutoff.
  double tail_cutoff = 0.0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: the interval with the
// largest error estimate is bisected until
// err <= max(abs_tol, rel_tol * |I|). The bisection budget is
// max_subdivisions plus eight per initial piece; when it runs out,
// QuadratureError is thrown with the residual error estimate.
double integrate(const Integrand& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Same, after splitting [a, b] at the given interior breakpoints. Use when
// the integrand has known kinks (|sin|^alpha zeros, support edges).
double integrate(const Integrand& f, std::span<const double> breakpoints,
                 const QuadratureConfig& cfg = {});

}  // namespace srh
