#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "srh/csv.hpp"
#include "srh_cli/commands.hpp"

namespace fs = std::filesystem;
using srh::read_csv_file;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "srh_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "srh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = srh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, SimulateIsDeterministic) {
  const auto a = scratch("sim_a"), b = scratch("sim_b");
  const std::vector<std::string> common = {"simulate", "--seed", "7", "--components", "500",
                                           "--samples", "200", "--t-max", "100"};
  auto args = common;
  args.insert(args.end(), {"--out", a.string()});
  ASSERT_EQ(run_cli(args), srh::cli::kOk);
  args = common;
  args.insert(args.end(), {"--out", b.string()});
  ASSERT_EQ(run_cli(args), srh::cli::kOk);
  for (const char* f : {"model.json", "path.csv", "summary.json"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const auto path = srh::read_path_csv(a / "path.csv");
  EXPECT_EQ(path.size(), 200u);
  EXPECT_DOUBLE_EQ(path.delta, 0.5);
}

TEST(Cli, UsageErrors) {
  const auto dir = scratch("usage");
  EXPECT_EQ(run_cli({"simulate", "--samples", "0", "--out", dir.string()}),
            srh::cli::kUsageError);
  EXPECT_EQ(run_cli({"multipath", "--paths", "1", "--out", dir.string()}),
            srh::cli::kUsageError);
  EXPECT_EQ(run_cli({"simulate", "--alpha", "2.5", "--out", dir.string()}),
            srh::cli::kUsageError);
  EXPECT_EQ(run_cli({"simulate", "--alpha", "2", "--out", dir.string()}),
            srh::cli::kUsageError);
  EXPECT_EQ(run_cli({"simulate", "--density", "f9", "--out", dir.string()}),
            srh::cli::kUsageError);
  EXPECT_EQ(run_cli({"frobnicate"}), srh::cli::kUsageError);
  EXPECT_EQ(run_cli({}), srh::cli::kUsageError);
}

TEST(Cli, MissingInputIsRuntimeError) {
  const auto dir = scratch("missing");
  std::string err;
  EXPECT_EQ(run_cli({"estimate", "--input", (dir / "nope.csv").string(), "--out", dir.string()},
                    &err),
            srh::cli::kRuntimeError);
  EXPECT_NE(err.find("nope.csv"), std::string::npos);
}

TEST(Cli, EstimatePlantedSignal) {
  const auto dir = scratch("planted");
  {
    std::ofstream out(dir / "signal.csv");
    out << "t,x\n";
    for (int j = 1; j <= 4096; ++j) {
      const double x = 5 * std::cos(0.4 * j) + 2 * std::cos(1.1 * j + 0.3) + std::cos(2.3 * j + 0.6);
      out << srh::format_number(j) << "," << srh::format_number(x) << "\n";
    }
  }
  ASSERT_EQ(run_cli({"estimate", "--input", (dir / "signal.csv").string(), "--bandwidth",
                     "silverman", "--out", dir.string()}),
            srh::cli::kOk);
  const auto freqs = read_csv_file(dir / "frequencies.csv");
  ASSERT_EQ(freqs.column("frequency").size(), 3u);
  EXPECT_NEAR(freqs.column("frequency")[0], 0.4, 2e-3);
  EXPECT_NEAR(freqs.column("frequency")[1], 1.1, 2e-3);
  EXPECT_NEAR(freqs.column("frequency")[2], 2.3, 2e-3);
  EXPECT_TRUE(fs::exists(dir / "periodogram.csv"));
  EXPECT_TRUE(fs::exists(dir / "density.csv"));
  EXPECT_NE(slurp(dir / "summary.json").find("\"frequencies_reported\": 3"), std::string::npos);
}

TEST(Cli, EstimateWithTruthColumn) {
  const auto dir = scratch("truth");
  ASSERT_EQ(run_cli({"estimate", "--seed", "3", "--truth", "f1", "--out", dir.string()}),
            srh::cli::kOk);
  const auto density = read_csv_file(dir / "density.csv");
  EXPECT_EQ(density.header, (std::vector<std::string>{"x", "f_hat", "f_true"}));
  EXPECT_EQ(density.column("x").size(), 512u);
  EXPECT_NE(slurp(dir / "summary.json").find("\"l1_distance\""), std::string::npos);
}

TEST(Cli, LimitsTable) {
  const auto a = scratch("lim_a"), b = scratch("lim_b");
  ASSERT_EQ(run_cli({"limits", "--seed", "1", "--t-max", "2e4", "--lag", "1", "--out",
                     a.string()}),
            srh::cli::kOk);
  ASSERT_EQ(run_cli({"limits", "--seed", "2", "--t-max", "2e4", "--out", b.string()}),
            srh::cli::kOk);
  const auto ta = read_csv_file(a / "limits.csv");
  const auto tb = read_csv_file(b / "limits.csv");
  ASSERT_EQ(ta.column("lambda").size(), 21u);
  EXPECT_EQ(ta.column("lambda")[0], 0.0);
  EXPECT_NEAR(ta.column("empirical_re")[0], 1.0, 1e-12);
  EXPECT_EQ(ta.column("limit")[0], 1.0);
  for (double d : ta.column("discrepancy")) EXPECT_LE(d, 0.02);
  const auto lag = read_csv_file(a / "lag_limits.csv");
  for (double d : lag.column("discrepancy")) EXPECT_LE(d, 0.02);
  EXPECT_NE(ta.column("limit"), tb.column("limit"));
  EXPECT_FALSE(fs::exists(b / "lag_limits.csv"));
}

TEST(Cli, MultipathRows) {
  const auto dir = scratch("multipath");
  ASSERT_EQ(run_cli({"multipath", "--components", "2000", "--out", dir.string()}),
            srh::cli::kOk);
  const auto t = read_csv_file(dir / "alpha_sine.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"t_half", "estimate", "truth"}));
  EXPECT_EQ(t.column("t_half").size(), 101u);
  EXPECT_EQ(t.column("estimate")[0], 0.0);
  EXPECT_DOUBLE_EQ(t.column("t_half")[100], 5.0);
}

TEST(Cli, ConfigPrecedence) {
  const auto dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.toml");
    cfg << "[simulate]\nseed = 11\nsamples = 64\ncomponents = 100\nt-max = 32\n";
  }
  ASSERT_EQ(run_cli({"--config", (dir / "run.toml").string(), "simulate", "--samples", "50",
                     "--out", dir.string()}),
            srh::cli::kOk);
  const std::string summary = slurp(dir / "summary.json");
  EXPECT_NE(summary.find("\"seed\": 11"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\"samples\": 50"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\"components\": 100"), std::string::npos) << summary;
  EXPECT_EQ(srh::read_path_csv(dir / "path.csv").size(), 50u);
}
