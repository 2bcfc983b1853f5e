#include "srh_cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <json.hpp>
#include <ostream>
#include <vector>

#include "srh/csv.hpp"
#include "srh/errors.hpp"
#include "srh/freq_est.hpp"
#include "srh/kde.hpp"
#include "srh/multipath.hpp"
#include "srh/nonergodic.hpp"
#include "srh/periodogram.hpp"
#include "srh/simulate.hpp"
#include "srh/spectra.hpp"
#include "srh/stable.hpp"

namespace srh::cli {
namespace {

using Json = nlohmann::ordered_json;

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + file.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
}

void write_summary(const std::filesystem::path& dir, const Json& summary) {
  write_text(dir / "summary.json", summary.dump(2) + "\n");
}

void prepare_out(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
}

HarmonizableModel build_model(double alpha, const SpectralDensity& density,
                              std::size_t components, std::uint64_t seed) {
  if (!(alpha < 2.0)) {
    throw DomainError("series simulation needs alpha < 2 (the LePage constant vanishes at 2)");
  }
  if (components == 0) throw DomainError("--components must be >= 1");
  return generate_model(Alpha(alpha), density, FixedTruncation{components}, seed);
}

double derived_delta(double t_max, std::size_t samples) {
  if (!(t_max > 0.0)) throw DomainError("--t-max must be > 0");
  if (samples < 2) throw DomainError("--samples must be >= 2");
  return t_max / static_cast<double>(samples);
}

void echo_model(Json& j, double alpha, const std::string& density, std::uint64_t seed,
                std::size_t components) {
  j["alpha"] = alpha;
  j["density"] = density;
  j["seed"] = seed;
  j["components"] = components;
}

}  // namespace

void cmd_simulate(const SimulateConfig& c) {
  const SpectralDensity density = density_from_spec(c.density);
  const double delta = derived_delta(c.t_max, c.samples);
  const HarmonizableModel model = build_model(c.alpha, density, c.components, c.seed);
  const PathSample path = sample_path(model, delta, c.samples);

  prepare_out(c.out);
  write_text(c.out / "model.json", model_to_json(model) + "\n");
  write_path_csv(c.out / "path.csv", path);

  Json s;
  s["command"] = "simulate";
  echo_model(s, c.alpha, c.density, c.seed, c.components);
  s["t_max"] = c.t_max;
  s["samples"] = c.samples;
  s["delta"] = delta;
  write_summary(c.out, s);
}

void cmd_estimate(const EstimateConfig& c) {
  const Kernel kernel = Kernel::from_name(c.kernel);
  const BandwidthRule rule = BandwidthRule::parse(c.bandwidth);
  PeakConfig peaks;
  peaks.prominence_threshold = c.prominence;
  peaks.min_separation = c.min_separation;
  peaks.pad_length = c.pad;
  validate(peaks);

  PathSample path;
  std::optional<SpectralDensity> truth;
  if (c.input) {
    if (!std::filesystem::exists(*c.input)) {
      throw std::runtime_error("input file '" + c.input->string() + "' does not exist");
    }
    path = read_path_csv(*c.input);
    if (c.truth) truth = density_from_spec(*c.truth);
  } else {
    const SpectralDensity density = density_from_spec(c.sim.density);
    const double delta = derived_delta(c.sim.t_max, c.sim.samples);
    const HarmonizableModel model =
        build_model(c.sim.alpha, density, c.sim.components, c.sim.seed);
    path = sample_path(model, delta, c.sim.samples);
    truth = c.truth ? density_from_spec(*c.truth) : density;
  }

  const std::size_t pad = c.pad == 0 ? next_pow2(8 * path.size()) : c.pad;
  if (pad < path.size()) throw DomainError("--pad must be >= the number of samples");
  const Periodogram pg = periodogram_fft(path, pad);
  const FrequencyEstimates fe = estimate_frequencies(path, peaks);
  const SpectralDensityEstimate est = estimate_spectral_density(fe, kernel, rule, c.reflect);

  prepare_out(c.sim.out);
  write_csv_file(c.sim.out / "periodogram.csv", {"theta", "periodogram"},
                 {pg.theta_grid, pg.values});

  std::vector<double> idx, cosc, sinc, amp;
  for (std::size_t k = 0; k < fe.freqs.size(); ++k) {
    idx.push_back(static_cast<double>(k + 1));
    cosc.push_back(fe.coeffs[k].alpha_hat);
    sinc.push_back(fe.coeffs[k].beta_hat);
    amp.push_back(std::hypot(fe.coeffs[k].alpha_hat, fe.coeffs[k].beta_hat));
  }
  write_csv_file(c.sim.out / "frequencies.csv",
                 {"index", "frequency", "cos_coef", "sin_coef", "amplitude",
                  "residual_energy"},
                 {idx, fe.freqs, cosc, sinc, amp, fe.residual_energy});

  const std::vector<double> grid = est.export_grid();
  std::vector<double> fhat, ftrue;
  for (double x : grid) {
    fhat.push_back(est(x));
    if (truth) ftrue.push_back(truth->pdf(x));
  }
  if (truth) {
    write_csv_file(c.sim.out / "density.csv", {"x", "f_hat", "f_true"}, {grid, fhat, ftrue});
  } else {
    write_csv_file(c.sim.out / "density.csv", {"x", "f_hat"}, {grid, fhat});
  }

  Json s;
  s["command"] = "estimate";
  if (c.input) {
    s["input"] = c.input->string();
  } else {
    echo_model(s, c.sim.alpha, c.sim.density, c.sim.seed, c.sim.components);
    s["t_max"] = c.sim.t_max;
  }
  s["samples"] = path.size();
  s["delta"] = path.delta;
  s["pad"] = pad;
  s["kernel"] = kernel.name();
  s["bandwidth_rule"] = rule.to_string();
  s["prominence"] = c.prominence;
  s["min_separation"] = c.min_separation ? *c.min_separation
                                         : 4.0 * std::numbers::pi / (static_cast<double>(pad) * path.delta);
  s["reflect"] = c.reflect;
  s["initial_peak"] = fe.initial_peak;
  s["threshold"] = c.prominence * fe.initial_peak;
  s["frequencies_reported"] = fe.freqs.size();
  s["subtractions"] = fe.iterations;
  s["bandwidth"] = est.bandwidth();
  s["bandwidth_fell_back"] = est.bandwidth_fell_back();
  if (truth) {
    s["truth"] = truth->name();
    s["l1_distance"] = l1_distance(est, *truth);
  }
  write_summary(c.sim.out, s);
}

void cmd_limits(const LimitsConfig& c) {
  const SpectralDensity density = density_from_spec(c.density);
  const HarmonizableModel model = build_model(c.alpha, density, c.components, c.seed);
  if (c.lambda_steps < 2) throw DomainError("--lambda-steps must be >= 2");
  if (!(c.lambda_max > 0.0)) throw DomainError("--lambda-max must be > 0");
  if (c.lag && !(*c.lag > 0.0)) throw DomainError("--lag must be > 0");
  const double dt = c.dt > 0.0 ? c.dt : max_time_step(model);

  std::vector<double> lam, emp_re, emp_im, lim, disc;
  std::vector<double> lag_re, lag_im, lag_lim, lag_disc;
  for (std::size_t i = 0; i < c.lambda_steps; ++i) {
    const double l = c.lambda_max * static_cast<double>(i) /
                     static_cast<double>(c.lambda_steps - 1);
    const std::complex<double> e = empirical_cf_time_average(model, l, c.t_max, dt);
    const double limit = cf_limit(model, l);
    lam.push_back(l);
    emp_re.push_back(e.real());
    emp_im.push_back(e.imag());
    lim.push_back(limit);
    disc.push_back(std::abs(e - limit));
    if (c.lag) {
      const std::complex<double> el =
          empirical_lag_cf_time_average(model, l, *c.lag, c.t_max, dt);
      const double ll = lag_cf_limit(model, l, *c.lag);
      lag_re.push_back(el.real());
      lag_im.push_back(el.imag());
      lag_lim.push_back(ll);
      lag_disc.push_back(std::abs(el - ll));
    }
  }

  prepare_out(c.out);
  const std::vector<std::string> header = {"lambda", "empirical_re", "empirical_im",
                                           "limit", "discrepancy"};
  write_csv_file(c.out / "limits.csv", header, {lam, emp_re, emp_im, lim, disc});
  if (c.lag) {
    write_csv_file(c.out / "lag_limits.csv", header,
                   {lam, lag_re, lag_im, lag_lim, lag_disc});
  }

  Json s;
  s["command"] = "limits";
  echo_model(s, c.alpha, c.density, c.seed, c.components);
  s["t_max"] = c.t_max;
  s["dt"] = dt;
  s["lambda_max"] = c.lambda_max;
  s["lambda_steps"] = c.lambda_steps;
  s["max_discrepancy"] = *std::max_element(disc.begin(), disc.end());
  if (c.lag) {
    s["lag"] = *c.lag;
    s["max_lag_discrepancy"] = *std::max_element(lag_disc.begin(), lag_disc.end());
  }
  write_summary(c.out, s);
}

void cmd_multipath(const MultipathConfig& c) {
  if (c.paths < 2) throw DomainError("--paths must be >= 2");
  if (c.samples < 2) throw DomainError("--samples must be >= 2");
  if (c.components == 0) throw DomainError("--components must be >= 1");
  const SpectralDensity density = density_from_spec(c.density);
  const Alpha alpha(c.alpha);
  EnsembleConfig ec;
  ec.paths = c.paths;
  ec.t_max = c.t_max;
  ec.points = c.samples;
  ec.truncation = FixedTruncation{c.components};
  const EnsembleSample ens = simulate_ensemble(alpha, density, ec, c.seed);
  const AlphaSineEstimates est = estimate_alpha_sine_all(ens, c.pooled);

  std::vector<double> estimate, truth;
  double max_err = 0.0;
  for (std::size_t i = 0; i < est.half_times.size(); ++i) {
    truth.push_back(alpha_sine_transform(density, alpha, est.half_times[i]));
    estimate.push_back(est.values[i] ? *est.values[i]
                                     : std::numeric_limits<double>::quiet_NaN());
    if (est.values[i]) max_err = std::max(max_err, std::abs(*est.values[i] - truth.back()));
  }

  prepare_out(c.out);
  write_csv_file(c.out / "alpha_sine.csv", {"t_half", "estimate", "truth"},
                 {est.half_times, estimate, truth});

  Json s;
  s["command"] = "multipath";
  echo_model(s, c.alpha, c.density, c.seed, c.components);
  s["paths"] = c.paths;
  s["t_max"] = c.t_max;
  s["samples"] = c.samples;
  s["delta"] = ens.delta;
  s["pooled"] = c.pooled;
  s["alpha_hat"] = est.pooled_alpha;
  s["max_abs_error"] = max_err;
  s["failed_lags"] = est.failures.size();
  s["failures"] = est.failures;
  write_summary(c.out, s);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary harmonizable stable processes: simulation and estimation"};
  app.set_config("--config", "", "TOML/INI config file; flags override its values");
  app.require_subcommand(1);

  const auto alpha_check = CLI::Validator(
      [](std::string& v) -> std::string {
        double a = 0.0;
        try {
          a = std::stod(v);
        } catch (const std::exception&) {
          return "alpha must be a number";
        }
        return (a > 0.0 && a <= 2.0) ? std::string() : "alpha must lie in (0, 2]";
      },
      "(0,2]");

  auto add_model = [&](CLI::App* sub, double& alpha, std::string& density,
                       std::uint64_t& seed, std::size_t& components) {
    sub->add_option("--alpha", alpha, "Stability index")->check(alpha_check)
        ->capture_default_str();
    sub->add_option("--density", density, "f1|f2|f3|f4|table:PATH")->capture_default_str();
    sub->add_option("--seed", seed, "Master seed")->capture_default_str();
    sub->add_option("--components", components, "Series terms N")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
  };
  const auto at_least_two =
      CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max());

  SimulateConfig sim;
  auto* s_sim = app.add_subcommand("simulate", "Simulate one path");
  add_model(s_sim, sim.alpha, sim.density, sim.seed, sim.components);
  s_sim->add_option("--t-max", sim.t_max, "Observation horizon T")->capture_default_str();
  s_sim->add_option("--samples", sim.samples, "Number of samples n")
      ->check(at_least_two)->capture_default_str();
  s_sim->add_option("--out", sim.out, "Output directory")->capture_default_str();

  EstimateConfig est;
  std::string est_input, est_truth;
  double est_min_sep = -1.0;
  auto* s_est = app.add_subcommand("estimate", "Periodogram, frequencies, spectral density");
  add_model(s_est, est.sim.alpha, est.sim.density, est.sim.seed, est.sim.components);
  s_est->add_option("--t-max", est.sim.t_max, "Observation horizon T")->capture_default_str();
  s_est->add_option("--samples", est.sim.samples, "Number of samples n")
      ->check(at_least_two)->capture_default_str();
  s_est->add_option("--input", est_input, "Path CSV (t, x) instead of simulating");
  s_est->add_option("--truth", est_truth, "Density to co-export with the estimate");
  s_est->add_option("--pad", est.pad, "FFT length (0: next power of two >= 8n)")
      ->capture_default_str();
  s_est->add_option("--kernel", est.kernel, "gaussian|epanechnikov|triangle")
      ->capture_default_str();
  s_est->add_option("--bandwidth", est.bandwidth, "silverman|sj|fixed:H")
      ->capture_default_str();
  s_est->add_option("--prominence", est.prominence, "Stop below this fraction of the first peak")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  s_est->add_option("--min-separation", est_min_sep, "Duplicate radius (angular frequency)");
  s_est->add_flag("--reflect", est.reflect, "Reflect |Z| estimates about 0");
  s_est->add_option("--out", est.sim.out, "Output directory")->capture_default_str();

  LimitsConfig lim;
  double lim_lag = -1.0;
  auto* s_lim = app.add_subcommand("limits", "Time averages vs Bessel-J0 product limits");
  add_model(s_lim, lim.alpha, lim.density, lim.seed, lim.components);
  s_lim->add_option("--t-max", lim.t_max, "Averaging horizon T")->capture_default_str();
  s_lim->add_option("--dt", lim.dt, "Time step (0: 0.2 / max|Z|)")->capture_default_str();
  s_lim->add_option("--lambda-max", lim.lambda_max, "Largest lambda")->capture_default_str();
  s_lim->add_option("--lambda-steps", lim.lambda_steps, "Lambda grid size")
      ->check(at_least_two)->capture_default_str();
  s_lim->add_option("--lag", lim_lag, "Also tabulate the lag CF at this h");
  s_lim->add_option("--out", lim.out, "Output directory")->capture_default_str();

  MultipathConfig mp;
  auto* s_mp = app.add_subcommand("multipath", "Ensemble alpha-sine transform estimate");
  add_model(s_mp, mp.alpha, mp.density, mp.seed, mp.components);
  s_mp->add_option("--paths", mp.paths, "Number of independent paths L")
      ->check(at_least_two)->capture_default_str();
  s_mp->add_option("--t-max", mp.t_max, "Grid end T")->capture_default_str();
  s_mp->add_option("--samples", mp.samples, "Grid points including t = 0")
      ->check(at_least_two)->capture_default_str();
  s_mp->add_flag("--pooled", mp.pooled, "Fit one alpha jointly over all lags");
  s_mp->add_option("--out", mp.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*s_sim) {
      cmd_simulate(sim);
    } else if (*s_est) {
      if (!est_input.empty()) est.input = est_input;
      if (!est_truth.empty()) est.truth = est_truth;
      if (s_est->count("--min-separation") > 0) est.min_separation = est_min_sep;
      cmd_estimate(est);
    } else if (*s_lim) {
      if (s_lim->count("--lag") > 0) lim.lag = lim_lag;
      cmd_limits(lim);
    } else if (*s_mp) {
      cmd_multipath(mp);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace srh::cli
