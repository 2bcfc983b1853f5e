#include "srh/nonergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "srh/errors.hpp"

namespace srh {
namespace {

constexpr double kSkip = 1e-12;

double polar_value(const HarmonizableModel& model, double t) {
  const auto& r = model.amps();
  const auto& th = model.phases();
  const auto& z = model.freqs();
  double acc = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) acc += r[k] * std::cos(th[k] + t * z[k]);
  return acc;
}

// prod_k J0(scale * R_k), skipping negligible arguments.
double j0_product(const HarmonizableModel& model, double scale) {
  double prod = 1.0;
  for (double r : model.amps()) {
    const double arg = scale * r;
    if (std::abs(arg) < kSkip) continue;
    prod *= bessel_j0(arg);
  }
  return prod;
}

void check_step(const HarmonizableModel& model, double T, double dt) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("time average: T must be > 0");
  if (!(dt > 0.0)) throw DomainError("time average: dt must be > 0");
  if (dt > max_time_step(model)) {
    throw DomainError("time average: dt too coarse for the highest frequency (need dt <= " +
                      std::to_string(max_time_step(model)) + ")");
  }
}

}  // namespace

void validate(const ObservableSpec& obs) {
  if (const auto* p = std::get_if<PeriodicObservable>(&obs)) {
    if (!(p->period > 0.0) || !std::isfinite(p->period)) {
      throw DomainError("periodic observable: period must be > 0");
    }
    if (p->coeffs.empty()) throw DomainError("periodic observable: no coefficients");
  } else if (const auto* q = std::get_if<IntegrableObservable>(&obs)) {
    const auto& g = q->grid;
    if (g.size() < 2 || g.size() != q->transform.size()) {
      throw DomainError("integrable observable: grid and transform sizes differ or < 2");
    }
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) throw DomainError("integrable observable: grid not increasing");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double tol = 1e-12 * std::max(1.0, std::abs(g[i]));
      if (std::abs(g[i] + g[g.size() - 1 - i]) > tol) {
        throw DomainError("integrable observable: grid not symmetric");
      }
    }
  } else if (const auto* l = std::get_if<LagCharFnObservable>(&obs)) {
    if (!(l->h >= 0.0)) throw DomainError("lag observable: h must be >= 0");
  }
}

double bessel_j0(double s) { return std::cyl_bessel_j(0.0, std::abs(s)); }

double cf_limit(const HarmonizableModel& model, double lambda) {
  return j0_product(model, lambda);
}

double lag_cf_limit(const HarmonizableModel& model, double lambda, double h) {
  if (h < 0.0) throw DomainError("lag_cf_limit: h must be >= 0");
  const auto& r = model.amps();
  const auto& z = model.freqs();
  double prod = 1.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double arg = 2.0 * lambda * r[k] * std::sin(h * z[k] / 2.0);
    if (std::abs(arg) < kSkip) continue;
    prod *= bessel_j0(arg);
  }
  return prod;
}

std::complex<double> observable_limit(const HarmonizableModel& model,
                                      const ObservableSpec& obs) {
  validate(obs);
  if (const auto* c = std::get_if<CharFnObservable>(&obs)) {
    return cf_limit(model, c->lambda);
  }
  if (const auto* l = std::get_if<LagCharFnObservable>(&obs)) {
    return lag_cf_limit(model, l->lambda, l->h);
  }
  if (const auto* p = std::get_if<PeriodicObservable>(&obs)) {
    const double w = 2.0 * std::numbers::pi / p->period;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < p->coeffs.size(); ++i) {
      const int n = p->first_index + static_cast<int>(i);
      acc += p->coeffs[i] * j0_product(model, w * n);
    }
    return acc;
  }
  const auto& q = std::get<IntegrableObservable>(obs);
  std::complex<double> acc = 0.0;
  double prev_y = q.grid[0];
  std::complex<double> prev = q.transform[0] * j0_product(model, prev_y);
  for (std::size_t i = 1; i < q.grid.size(); ++i) {
    const std::complex<double> cur = q.transform[i] * j0_product(model, q.grid[i]);
    acc += 0.5 * (q.grid[i] - prev_y) * (cur + prev);
    prev = cur;
    prev_y = q.grid[i];
  }
  return acc;
}

std::complex<double> time_average(const std::function<std::complex<double>(double)>& g,
                                  double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("time_average: T and dt must be > 0");
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt));
  const double h = T / static_cast<double>(steps);
  constexpr std::size_t kBlock = 4096;
  std::complex<double> total = 0.5 * (g(0.0) + g(T));
  std::complex<double> block = 0.0;
  for (std::size_t i = 1; i < steps; ++i) {
    block += g(static_cast<double>(i) * h);
    if (i % kBlock == 0) {
      total += block;
      block = 0.0;
    }
  }
  total += block;
  return total * h / T;
}

double max_time_step(const HarmonizableModel& model) {
  double zmax = 0.0;
  for (double z : model.freqs()) zmax = std::max(zmax, std::abs(z));
  return zmax > 0.0 ? 0.2 / zmax : std::numeric_limits<double>::infinity();
}

std::complex<double> empirical_cf_time_average(const HarmonizableModel& model,
                                               double lambda, double T, double dt) {
  check_step(model, T, dt);
  if (lambda == 0.0) return 1.0;
  return time_average(
      [&](double t) { return std::polar(1.0, lambda * polar_value(model, t)); }, T, dt);
}

std::complex<double> empirical_lag_cf_time_average(const HarmonizableModel& model,
                                                   double lambda, double h, double T,
                                                   double dt) {
  check_step(model, T, dt);
  if (h < 0.0) throw DomainError("lag time average: h must be >= 0");
  if (lambda == 0.0 || h == 0.0) return 1.0;
  return time_average(
      [&](double t) {
        return std::polar(1.0, lambda * (polar_value(model, t + h) - polar_value(model, t)));
      },
      T, dt);
}

}  // namespace srh
