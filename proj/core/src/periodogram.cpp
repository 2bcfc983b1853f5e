#include "srh/periodogram.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "srh/errors.hpp"

namespace srh {
namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::size_t Periodogram::argmax() const {
  if (values.empty()) throw DomainError("periodogram is empty");
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

double Periodogram::max_value() const { return values[argmax()]; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::complex<double> dft(std::span<const double> values, double theta) {
  if (values.empty()) throw DomainError("dft: empty input");
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double w = static_cast<double>(k + 1) * theta;
    re += values[k] * std::cos(w);
    im -= values[k] * std::sin(w);
  }
  const double inv_n = 1.0 / static_cast<double>(values.size());
  return {re * inv_n, im * inv_n};
}

double periodogram_at(const PathSample& path, double theta) {
  return std::norm(dft(path.values, theta * path.delta));
}

double dirichlet_s(std::size_t n, double x) {
  const double half = 0.5 * x;
  const double den = std::sin(half);
  const double dn = static_cast<double>(n);
  if (std::abs(den) < 1e-9) {
    // x near 2 pi j: the limit is n (-1)^(j (n-1)). The neglected
    // curvature term is O(n^2 x^2) relative, far below double precision.
    const double j = std::round(x / (2.0 * kPi));
    const double sign =
        (static_cast<long long>(j) % 2 != 0 && n % 2 == 0) ? -1.0 : 1.0;
    return sign * dn;
  }
  return std::sin(dn * half) / den;
}

double exact_periodogram(const HarmonizableModel& model, double delta,
                         std::size_t n, double theta) {
  if (n == 0) throw DomainError("exact_periodogram: n must be >= 1");
  if (!(delta > 0.0)) throw DomainError("exact_periodogram: delta must be > 0");
  // Rescale to unit spacing: Z -> Z delta, theta -> theta delta.
  const double th = theta * delta;
  const double np1 = static_cast<double>(n) + 1.0;
  const auto& r = model.amps();
  const auto& u = model.phases();
  const auto& zf = model.freqs();
  const std::size_t m = r.size();

  // Per term: a = S(Z - theta), b = S(Z + theta), psi = U + (n+1) Z / 2.
  // Signed Z is kept inside S so the cross terms stay exact when the
  // series mixes positive and negative frequencies.
  std::vector<double> a(m), b(m), psi(m);
  for (std::size_t l = 0; l < m; ++l) {
    const double z = zf[l] * delta;
    a[l] = dirichlet_s(n, z - th);
    b[l] = dirichlet_s(n, z + th);
    psi[l] = u[l] + 0.5 * np1 * z;
  }

  double diag = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    diag += 0.25 * r[l] * r[l] *
            (a[l] * a[l] + b[l] * b[l] + 2.0 * std::cos(2.0 * psi[l]) * a[l] * b[l]);
  }
  double cross = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = l + 1; k < m; ++k) {
      cross += 0.5 * r[l] * r[k] *
               ((a[l] * a[k] + b[l] * b[k]) * std::cos(psi[l] - psi[k]) +
                (a[l] * b[k] + b[l] * a[k]) * std::cos(psi[l] + psi[k]));
    }
  }
  const double dn = static_cast<double>(n);
  return (diag + cross) / (dn * dn);
}

struct PeriodogramEngine::Impl {
  std::size_t n;
  std::size_t pad;
  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;

  Impl(std::size_t n_, std::size_t pad_) : n(n_), pad(pad_) {
    in = fftw_alloc_real(pad);
    out = fftw_alloc_complex(pad / 2 + 1);
    if (in == nullptr || out == nullptr) {
      fftw_free(in);
      fftw_free(out);
      throw std::bad_alloc();
    }
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(pad), in, out, FFTW_ESTIMATE);
  }
  ~Impl() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
};

PeriodogramEngine::PeriodogramEngine(std::size_t n, std::size_t pad_length) {
  if (n < 1) throw DomainError("periodogram: n must be >= 1");
  if (pad_length < n) throw DomainError("periodogram: pad_length must be >= n");
  if (pad_length < 2) throw DomainError("periodogram: pad_length must be >= 2");
  impl_ = std::make_unique<Impl>(n, pad_length);
}

PeriodogramEngine::~PeriodogramEngine() = default;
PeriodogramEngine::PeriodogramEngine(PeriodogramEngine&&) noexcept = default;
PeriodogramEngine& PeriodogramEngine::operator=(PeriodogramEngine&&) noexcept = default;

std::size_t PeriodogramEngine::n() const { return impl_->n; }
std::size_t PeriodogramEngine::pad_length() const { return impl_->pad; }

Periodogram PeriodogramEngine::compute(const PathSample& path) {
  if (path.values.size() != impl_->n) {
    throw DomainError("periodogram: path length does not match engine");
  }
  const std::size_t pad = impl_->pad;
  std::copy(path.values.begin(), path.values.end(), impl_->in);
  std::fill(impl_->in + impl_->n, impl_->in + pad, 0.0);
  fftw_execute(impl_->plan);

  Periodogram pg;
  pg.n = impl_->n;
  pg.pad_length = pad;
  pg.delta = path.delta;
  const std::size_t half = pad / 2;
  pg.theta_grid.resize(half);
  pg.values.resize(half);
  const double inv_n2 = 1.0 / (static_cast<double>(impl_->n) * static_cast<double>(impl_->n));
  for (std::size_t j = 1; j <= half; ++j) {
    const double re = impl_->out[j][0];
    const double im = impl_->out[j][1];
    pg.theta_grid[j - 1] =
        2.0 * kPi * static_cast<double>(j) / (static_cast<double>(pad) * path.delta);
    pg.values[j - 1] = (re * re + im * im) * inv_n2;
  }
  return pg;
}

Periodogram periodogram_fft(const PathSample& path, std::size_t pad_length) {
  validate(path);
  PeriodogramEngine engine(path.values.size(), pad_length);
  return engine.compute(path);
}

}  // namespace srh
