#include "srh/simulate.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "srh/errors.hpp"

namespace srh {
namespace {

// Sub-stream ids of the master seed. Each stream is consumed sequentially
// in k, so changing N never reshuffles earlier terms.
constexpr std::uint64_t kGammaStream = 1;
constexpr std::uint64_t kGaussStream = 2;
constexpr std::uint64_t kFreqStream = 3;

}  // namespace

HarmonizableModel::HarmonizableModel(Alpha alpha, std::string density_name,
                                     std::uint64_t seed,
                                     std::vector<double> gammas,
                                     std::vector<double> g1,
                                     std::vector<double> g2,
                                     std::vector<double> freqs)
    : alpha_(alpha),
      density_name_(std::move(density_name)),
      seed_(seed),
      gammas_(std::move(gammas)),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      freqs_(std::move(freqs)) {
  const std::size_t n = gammas_.size();
  if (n == 0) throw DomainError("HarmonizableModel: empty series");
  if (g1_.size() != n || g2_.size() != n || freqs_.size() != n) {
    throw DomainError("HarmonizableModel: series lengths differ");
  }
  if (!(gammas_[0] > 0.0)) {
    throw DomainError("HarmonizableModel: arrival times must be positive");
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!(gammas_[k] > gammas_[k - 1])) {
      throw DomainError("HarmonizableModel: arrival times must increase strictly");
    }
  }
  const double a = alpha_.value();
  factor_ = std::pow(c_alpha(alpha_) / b_alpha(alpha_), 1.0 / a);
  nu_.resize(n);
  amps_.resize(n);
  phases_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    nu_[k] = factor_ * std::pow(gammas_[k], -1.0 / a);
    amps_[k] = nu_[k] * std::hypot(g1_[k], g2_[k]);
    double th = std::atan2(-g2_[k], g1_[k]);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    phases_[k] = th;
  }
}

double HarmonizableModel::value_at(double t) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < nu_.size(); ++k) {
    const double w = t * freqs_[k];
    acc += nu_[k] * (g1_[k] * std::cos(w) + g2_[k] * std::sin(w));
  }
  return acc;
}

void validate(const PathSample& path) {
  if (!(path.delta > 0.0) || !std::isfinite(path.delta)) {
    throw DomainError("path: delta must be positive");
  }
  if (path.values.size() < 2) throw DomainError("path: need n >= 2 samples");
  for (double v : path.values) {
    if (!std::isfinite(v)) throw DomainError("path: non-finite sample");
  }
}

HarmonizableModel generate_model(Alpha alpha, const SpectralDensity& density,
                                 TruncationRule rule, std::uint64_t seed) {
  Rng gamma_rng = make_stream(seed, kGammaStream);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> gammas;

  auto next_gamma = [&](double prev) {
    double g = prev;
    // Exponential draws of exactly 0 would break strict monotonicity.
    do {
      g = prev + expo(gamma_rng);
    } while (!(g > prev));
    return g;
  };

  if (const auto* fixed = std::get_if<FixedTruncation>(&rule)) {
    if (fixed->terms == 0) throw DomainError("truncation: N must be >= 1");
    gammas.reserve(fixed->terms);
    double g = 0.0;
    for (std::size_t k = 0; k < fixed->terms; ++k) {
      g = next_gamma(g);
      gammas.push_back(g);
    }
  } else {
    const auto& tail = std::get<TailTruncation>(rule);
    if (!(tail.epsilon > 0.0 && tail.epsilon < 1.0)) {
      throw DomainError("truncation: epsilon must lie in (0, 1)");
    }
    if (tail.max_terms == 0) throw DomainError("truncation: max_terms must be >= 1");
    // Gamma_k^(-1/a) < eps Gamma_1^(-1/a)  <=>  Gamma_k > Gamma_1 eps^(-a).
    double g = next_gamma(0.0);
    gammas.push_back(g);
    const double threshold = g * std::pow(tail.epsilon, -alpha.value());
    while (gammas.size() < tail.max_terms && !(g > threshold)) {
      g = next_gamma(g);
      gammas.push_back(g);
    }
  }

  const std::size_t n = gammas.size();
  Rng gauss_rng = make_stream(seed, kGaussStream);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> g1(n);
  std::vector<double> g2(n);
  for (std::size_t k = 0; k < n; ++k) {
    g1[k] = normal(gauss_rng);
    g2[k] = normal(gauss_rng);
  }
  Rng freq_rng = make_stream(seed, kFreqStream);
  std::vector<double> freqs = sample_frequencies(density, freq_rng, n);

  return HarmonizableModel(alpha, density.name(), seed, std::move(gammas),
                           std::move(g1), std::move(g2), std::move(freqs));
}

std::vector<double> sample_times(const HarmonizableModel& model,
                                 std::span<const double> times) {
  std::vector<double> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) out[j] = model.value_at(times[j]);
  return out;
}

PathSample sample_path(const HarmonizableModel& model, double delta,
                       std::size_t n) {
  if (!(delta > 0.0)) throw DomainError("sample_path: delta must be > 0");
  if (n < 2) throw DomainError("sample_path: n must be >= 2");
  PathSample path{delta, std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) path.values[j] = model.value_at(path.time(j));
  return path;
}

PathSample sample_path_polar(const HarmonizableModel& model, double delta,
                             std::size_t n) {
  if (!(delta > 0.0)) throw DomainError("sample_path_polar: delta must be > 0");
  if (n < 2) throw DomainError("sample_path_polar: n must be >= 2");
  PathSample path{delta, std::vector<double>(n)};
  const auto& r = model.amps();
  const auto& th = model.phases();
  const auto& z = model.freqs();
  for (std::size_t j = 0; j < n; ++j) {
    const double t = path.time(j);
    double acc = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) acc += r[k] * std::cos(th[k] + t * z[k]);
    path.values[j] = acc;
  }
  return path;
}

double theoretical_acv(const HarmonizableModel& model, double t) {
  const auto& nu = model.scales();
  const auto& z = model.freqs();
  double acc = 0.0;
  for (std::size_t k = 0; k < nu.size(); ++k) acc += nu[k] * nu[k] * std::cos(t * z[k]);
  return acc;
}

std::string model_to_json(const HarmonizableModel& model) {
  nlohmann::ordered_json j;
  j["alpha"] = model.alpha().value();
  j["density"] = model.density_name();
  j["seed"] = model.seed();
  j["truncation"] = model.size();
  j["gammas"] = model.gammas();
  j["g1"] = model.g1();
  j["g2"] = model.g2();
  j["freqs"] = model.freqs();
  j["amps"] = model.amps();
  j["phases"] = model.phases();
  return j.dump(1);
}

HarmonizableModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    return HarmonizableModel(Alpha(j.at("alpha").get<double>()),
                             j.at("density").get<std::string>(),
                             j.at("seed").get<std::uint64_t>(),
                             j.at("gammas").get<std::vector<double>>(),
                             j.at("g1").get<std::vector<double>>(),
                             j.at("g2").get<std::vector<double>>(),
                             j.at("freqs").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("model JSON: ") + e.what());
  }
}

}  // namespace srh
