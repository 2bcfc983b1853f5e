#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace srh::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kUsageError = 2;

struct SimulateConfig {
  double alpha = 1.5;
  std::string density = "f1";
  std::uint64_t seed = 1;
  std::size_t components = 10'000;
  double t_max = 500.0;
  std::size_t samples = 1'000;
  std::filesystem::path out = "out";
};

struct EstimateConfig {
  SimulateConfig sim;
  std::optional<std::filesystem::path> input;  // path CSV instead of simulating
  std::optional<std::string> truth;            // density to co-export
  std::size_t pad = 0;                         // 0: next_pow2(8 n)
  std::string kernel = "gaussian";
  std::string bandwidth = "sj";
  double prominence = 0.005;
  std::optional<double> min_separation;
  bool reflect = false;
};

struct LimitsConfig {
  double alpha = 1.5;
  std::string density = "f1";
  std::uint64_t seed = 1;
  std::size_t components = 5;
  double t_max = 2e4;
  double dt = 0.0;  // 0: the largest admissible step
  double lambda_max = 2.0;
  std::size_t lambda_steps = 21;
  std::optional<double> lag;
  std::filesystem::path out = "out";
};

struct MultipathConfig {
  double alpha = 1.5;
  std::string density = "f1";
  std::uint64_t seed = 1;
  std::size_t components = 10'000;
  std::size_t paths = 100;
  double t_max = 10.0;
  std::size_t samples = 101;
  bool pooled = false;
  std::filesystem::path out = "out";
};

// Each command writes its artifacts plus summary.json into config.out and
// throws on failure.
void cmd_simulate(const SimulateConfig& config);
void cmd_estimate(const EstimateConfig& config);
void cmd_limits(const LimitsConfig& config);
void cmd_multipath(const MultipathConfig& config);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srh::cli
