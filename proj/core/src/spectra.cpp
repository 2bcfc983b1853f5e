#include "srh/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "srh/errors.hpp"

namespace srh {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double random_sign(Rng& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
}

// Uniform on the open interval (0, 1).
double open_uniform(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double v = 0.0;
  do {
    v = u(rng);
  } while (v == 0.0);
  return v;
}

SpectralDensity make_f1() {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  SpectralDensity::Shape shape;
  shape.default_cutoff = 12.0;  // one-sided tail mass ~ 2e-33
  shape.second_derivative = [norm](double x) {
    return norm * (x * x - 1.0) * std::exp(-0.5 * x * x);
  };
  return SpectralDensity(
      "f1", [norm](double x) { return norm * std::exp(-0.5 * x * x); },
      [](Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); },
      std::move(shape));
}

SpectralDensity make_f2() {
  // x^2 exp(-|x|/4) integrates to 2 * Gamma(3) * 4^3 = 256 over R.
  SpectralDensity::Shape shape;
  shape.default_cutoff = 200.0;
  shape.second_derivative = [](double x) {
    return (2.0 - x + x * x / 16.0) * std::exp(-x / 4.0) / 256.0;
  };
  return SpectralDensity(
      "f2", [](double x) { return x * x * std::exp(-x / 4.0) / 256.0; },
      [](Rng& rng) {
        // |Z| ~ Gamma(shape 3, scale 4) as a sum of three exponentials.
        std::exponential_distribution<double> e(0.25);
        const double g = e(rng) + e(rng) + e(rng);
        return random_sign(rng) * g;
      },
      std::move(shape));
}

SpectralDensity make_f3() {
  SpectralDensity::Shape shape;
  shape.support_lo = 1.0;
  shape.default_cutoff = 1.0e4;
  shape.kinks = {1.0};
  return SpectralDensity(
      "f3", [](double x) { return x >= 1.0 ? 0.5 / (x * x) : 0.0; },
      [](Rng& rng) { return random_sign(rng) / open_uniform(rng); },
      std::move(shape));
}

SpectralDensity make_f4() {
  SpectralDensity::Shape shape;
  shape.support_hi = 1.0;
  shape.default_cutoff = 1.0;
  shape.kinks = {1.0};
  return SpectralDensity(
      "f4", [](double x) { return x <= 1.0 ? 0.5 : 0.0; },
      [](Rng& rng) {
        return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      },
      std::move(shape));
}

}  // namespace

SpectralDensity::SpectralDensity(std::string name, HalfPdf half_pdf,
                                 Sampler sampler, Shape shape)
    : name_(std::move(name)),
      half_pdf_(std::move(half_pdf)),
      sampler_(std::move(sampler)),
      shape_(std::move(shape)) {
  if (!half_pdf_ || !sampler_) {
    throw DomainError("SpectralDensity: pdf and sampler are required");
  }
  if (!(shape_.support_lo >= 0.0) || !(shape_.support_hi > shape_.support_lo)) {
    throw DomainError("SpectralDensity: invalid support");
  }
}

double SpectralDensity::pdf(double x) const {
  const double ax = std::abs(x);
  if (ax < shape_.support_lo || ax > shape_.support_hi) return 0.0;
  return half_pdf_(ax);
}

bool SpectralDensity::bounded() const { return std::isfinite(shape_.support_hi); }

double SpectralDensity::cutoff(const QuadratureConfig& cfg) const {
  if (bounded()) return shape_.support_hi;
  return cfg.tail_cutoff > 0.0 ? cfg.tail_cutoff : shape_.default_cutoff;
}

double SpectralDensity::second_derivative(double x) const {
  if (!shape_.second_derivative) {
    throw DomainError("density '" + name_ + "' is not twice differentiable");
  }
  const double ax = std::abs(x);
  if (ax < shape_.support_lo || ax > shape_.support_hi) return 0.0;
  return shape_.second_derivative(ax);
}

SpectralDensity builtin_density(std::string_view name) {
  if (name == "f1") return make_f1();
  if (name == "f2") return make_f2();
  if (name == "f3") return make_f3();
  if (name == "f4") return make_f4();
  throw DomainError("unknown density '" + std::string(name) +
                    "' (expected f1, f2, f3 or f4)");
}

SpectralDensity density_from_spec(std::string_view spec) {
  constexpr std::string_view prefix = "table:";
  if (spec.substr(0, prefix.size()) == prefix) {
    return load_tabulated_density(std::filesystem::path(spec.substr(prefix.size())));
  }
  return builtin_density(spec);
}

SpectralDensity tabulated_density(std::string name, std::span<const double> x,
                                  std::span<const double> fx) {
  if (x.size() != fx.size() || x.size() < 2) {
    throw DomainError("tabulated density: need >= 2 (x, f) pairs");
  }
  const std::size_t m = x.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(fx[i]) || fx[i] < 0.0) {
      throw DomainError("tabulated density: values must be finite, f >= 0");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw DomainError("tabulated density: x must be strictly increasing");
    }
  }
  const double scale = std::max(std::abs(x.front()), std::abs(x.back()));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = m - 1 - i;
    const double tol = 1e-9 * std::max(1.0, scale);
    if (std::abs(x[i] + x[j]) > tol ||
        std::abs(fx[i] - fx[j]) > 1e-9 * std::max(1.0, fx[i])) {
      throw DomainError("tabulated density: grid and values must be symmetric");
    }
  }

  // Half grid on [0, x_max], with the origin inserted when the grid
  // straddles it (linear interpolation between +-x0 is flat there).
  std::vector<double> hx;
  std::vector<double> hf;
  if (x[m / 2] > 0.0 && (m % 2 == 0)) {
    hx.push_back(0.0);
    hf.push_back(fx[m / 2]);
  }
  for (std::size_t i = (m - 1) / 2 + (m % 2 == 0 ? 1 : 0); i < m; ++i) {
    hx.push_back(x[i]);
    hf.push_back(fx[i]);
  }
  if (hx.size() < 2) {
    throw DomainError("tabulated density: grid must extend past the origin");
  }

  // Mass of the piecewise-linear half density, then renormalize so the
  // full-line mass is one.
  std::vector<double> cum(hx.size(), 0.0);
  for (std::size_t i = 1; i < hx.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (hf[i] + hf[i - 1]) * (hx[i] - hx[i - 1]);
  }
  const double half_mass = cum.back();
  if (!(half_mass > 0.0)) {
    throw DomainError("tabulated density: zero mass");
  }
  for (auto& v : hf) v *= 0.5 / half_mass;
  for (auto& v : cum) v /= half_mass;  // CDF of |Z| on the knots

  auto interp = [hx, hf](double a) {
    if (a > hx.back()) return 0.0;
    auto it = std::upper_bound(hx.begin(), hx.end(), a);
    if (it == hx.end()) return hf.back();
    const std::size_t i = static_cast<std::size_t>(it - hx.begin());
    const double w = (a - hx[i - 1]) / (hx[i] - hx[i - 1]);
    return hf[i - 1] + w * (hf[i] - hf[i - 1]);
  };

  // Exact inverse of the piecewise-quadratic CDF of |Z|.
  auto sampler = [hx, hf, cum](Rng& rng) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cum.begin());
    i = std::clamp<std::size_t>(i, 1, cum.size() - 1);
    // On segment i the |Z| density is 2*(a + b s), s in [0, w).
    const double w = hx[i] - hx[i - 1];
    const double a = 2.0 * hf[i - 1];
    const double b = 2.0 * (hf[i] - hf[i - 1]) / w;
    const double target = u - cum[i - 1];
    double s = 0.0;
    if (std::abs(b) * w < 1e-12 * std::max(a, 1e-300)) {
      s = a > 0.0 ? target / a : 0.0;
    } else {
      const double disc = std::max(0.0, a * a + 2.0 * b * target);
      s = 2.0 * target / (a + std::sqrt(disc));
    }
    s = std::clamp(s, 0.0, w);
    const double mag = hx[i - 1] + s;
    return random_sign(rng) * mag;
  };

  SpectralDensity::Shape shape;
  shape.support_lo = 0.0;
  shape.support_hi = hx.back();
  shape.default_cutoff = hx.back();
  shape.kinks.assign(hx.begin() + 1, hx.end() - 1);
  return SpectralDensity(std::move(name), std::move(interp), std::move(sampler),
                         std::move(shape));
}

SpectralDensity load_tabulated_density(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open density table '" + path.string() + "'");
  }
  std::vector<double> xs;
  std::vector<double> fs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (!(fields >> a)) continue;  // blank line
    if (!(fields >> b)) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) +
                        ": expected two numeric columns");
    }
    xs.push_back(a);
    fs.push_back(b);
  }
  return tabulated_density("table:" + path.string(), xs, fs);
}

double pdf_eval(const SpectralDensity& density, double x) { return density.pdf(x); }

double abs_density(const SpectralDensity& density, double x) {
  if (x < 0.0) throw DomainError("abs_density: x must be >= 0");
  return 2.0 * density.pdf(x);
}

std::vector<double> sample_frequencies(const SpectralDensity& density, Rng& rng,
                                       std::size_t count) {
  if (count == 0) throw DomainError("sample_frequencies: count must be >= 1");
  std::vector<double> out(count);
  for (auto& z : out) z = density.sample(rng);
  return out;
}

double integrate_even(const SpectralDensity& density, const Integrand& g,
                      const QuadratureConfig& cfg, double kink_period) {
  const double lo = density.support_lo();
  const double hi = density.cutoff(cfg);
  std::vector<double> bp{lo, hi};
  for (double k : density.kinks()) {
    if (k > lo && k < hi) bp.push_back(k);
  }
  // Geometric breakpoints keep each piece informative on long tails.
  if (!density.bounded()) {
    for (double p = 1.0; p < hi; p *= 2.0) {
      if (p > lo) bp.push_back(p);
    }
  }
  if (kink_period > 0.0) {
    const auto first = static_cast<long long>(std::floor(lo / kink_period)) + 1;
    for (long long j = first;; ++j) {
      const double p = static_cast<double>(j) * kink_period;
      if (p >= hi) break;
      bp.push_back(p);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  // Piece i is mapped onto [i, i+1] through x = a + (b - a) phi(s),
  // phi(s) = s^3 (10 - 15 s + 6 s^2). phi' vanishes to second order at both
  // ends, which tames (x - a)^alpha endpoint behaviour such as |sin|^alpha
  // zeros and support edges.
  std::vector<double> unit(bp.size());
  for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = static_cast<double>(i);
  auto mapped = [&](double u) {
    const double fl = std::min(std::floor(u), static_cast<double>(bp.size() - 2));
    const auto i = static_cast<std::size_t>(fl);
    const double s = u - fl;
    const double a = bp[i];
    const double w = bp[i + 1] - a;
    const double phi = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    const double dphi = 30.0 * s * s * (1.0 - s) * (1.0 - s);
    if (dphi == 0.0) return 0.0;
    const double x = a + w * phi;
    return g(x) * density.pdf(x) * w * dphi;
  };
  return 2.0 * integrate(mapped, unit, cfg);
}

}  // namespace srh
