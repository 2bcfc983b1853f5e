#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "srh/simulate.hpp"

namespace srh {

struct CharFnObservable {
  double lambda = 1.0;
};

struct LagCharFnObservable {
  double lambda = 1.0;
  double h = 1.0;
};

/// h(x) = sum_{n = first_index}^{first_index + coeffs.size() - 1} c_n e^{i (2pi/p) n x}.
struct PeriodicObservable {
  double period = 2.0 * 3.14159265358979323846;
  std::vector<std::complex<double>> coeffs;
  int first_index = 0;
};

/// Fourier transform F h tabulated on a strictly increasing symmetric grid.
struct IntegrableObservable {
  std::vector<double> grid;
  std::vector<std::complex<double>> transform;
};

using ObservableSpec = std::variant<CharFnObservable, LagCharFnObservable,
                                    PeriodicObservable, IntegrableObservable>;

void validate(const ObservableSpec& obs);

/// Bessel function of the first kind, order 0 (even in s).
double bessel_j0(double s);

/// prod_k J0(lambda R_k).
double cf_limit(const HarmonizableModel& model, double lambda);

/// prod_k J0(2 lambda R_k sin(h Z_k / 2)).
double lag_cf_limit(const HarmonizableModel& model, double lambda, double h);

/// Almost-sure limit of the time average of the observable along the path.
std::complex<double> observable_limit(const HarmonizableModel& model,
                                      const ObservableSpec& obs);

/// Trapezoidal (1/T) int_0^T g(tau) dtau with the step shrunk from `dt` to
/// T / ceil(T / dt). Summation is done in fixed blocks.
std::complex<double> time_average(const std::function<std::complex<double>(double)>& g,
                                  double T, double dt);

/// (1/T) int_0^T exp(i lambda X(tau)) dtau on the continuous series.
/// Throws DomainError if dt > 0.2 / max|Z_k| or T <= 0.
std::complex<double> empirical_cf_time_average(const HarmonizableModel& model,
                                               double lambda, double T, double dt);

/// (1/T) int_0^T exp(i lambda (X(tau + h) - X(tau))) dtau.
std::complex<double> empirical_lag_cf_time_average(const HarmonizableModel& model,
                                                   double lambda, double h, double T,
                                                   double dt);

/// Largest step accepted by the empirical averages: 0.2 / max|Z_k|.
double max_time_step(const HarmonizableModel& model);

}  // namespace srh
