#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "srh/simulate.hpp"

namespace srh {

/// I_n on the angular grid theta_j = 2 pi j / (pad_length delta),
/// j = 1..pad_length/2, i.e. (0, pi/delta].
struct Periodogram {
  std::vector<double> theta_grid;
  std::vector<double> values;
  std::size_t n = 0;
  std::size_t pad_length = 0;
  double delta = 1.0;

  std::size_t argmax() const;
  double max_value() const;
};

/// n^-1 sum_{k=1}^n x(k) e^{-i k theta}.
std::complex<double> dft(std::span<const double> values, double theta);

Periodogram periodogram_fft(const PathSample& path, std::size_t pad_length);

/// |dft(values, theta * delta)|^2 at any angular frequency theta > 0.
double periodogram_at(const PathSample& path, double theta);

/// sin(n x / 2) / sin(x / 2), continuous at x = 2 pi j.
double dirichlet_s(std::size_t n, double x);

/// Closed-form periodogram of a path sampled from `model` at t_j = j delta,
/// as a double sum over the series terms. O(N^2): meant for small models.
double exact_periodogram(const HarmonizableModel& model, double delta,
                         std::size_t n, double theta);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Reusable zero-padded FFT periodogram for a fixed (n, pad_length).
/// Not thread-safe; use one engine per thread.
class PeriodogramEngine {
 public:
  PeriodogramEngine(std::size_t n, std::size_t pad_length);
  ~PeriodogramEngine();
  PeriodogramEngine(const PeriodogramEngine&) = delete;
  PeriodogramEngine& operator=(const PeriodogramEngine&) = delete;
  PeriodogramEngine(PeriodogramEngine&&) noexcept;
  PeriodogramEngine& operator=(PeriodogramEngine&&) noexcept;

  std::size_t n() const;
  std::size_t pad_length() const;
  Periodogram compute(const PathSample& path);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace srh
