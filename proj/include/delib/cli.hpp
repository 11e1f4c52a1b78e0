#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "delib/engine.hpp"

namespace delib {

/// Exit codes shared by every subcommand.
namespace exit_code {
inline constexpr int kConverged = 0;
inline constexpr int kError = 1;
inline constexpr int kCycle = 2;
inline constexpr int kCapReached = 3;
inline constexpr int kCheckFailed = 4;
}  // namespace exit_code

struct CliConfig {
  std::string subcommand;
  std::optional<std::filesystem::path> config_path;

  std::optional<std::string> space;
  std::optional<std::string> distance;
  std::optional<std::string> rule;
  std::optional<double> epsilon;
  std::optional<std::string> policy;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> k;
  std::optional<int> dim;
  std::optional<long> max_iters;
  std::optional<std::filesystem::path> out;
  std::string format = "csv";
  std::optional<std::filesystem::path> profile;
  bool quiet = false;

  std::string reproduce_name;             // reproduce
  std::vector<std::uint64_t> seeds;       // batch
  std::vector<std::string> checks;        // verify: restrict the matrix
  std::optional<int> verify_seeds;        // verify: seeds per configuration
  bool corrupt_rule = false;              // verify: negative-control hook
};

/// A fully resolved single run.
struct RunSetup {
  EngineConfig engine;
  Profile initial;
  std::uint64_t seed = 0;
};

/// Builds a run from a JSON run configuration (may be empty) plus command-line overrides.
RunSetup resolve_run(const nlohmann::json& config, const CliConfig& overrides,
                     const std::filesystem::path& base_dir = {});

/// Parses "1..100", "1,2,5" or a single number.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

struct ReproduceResult {
  bool ok = true;
  std::string table;
  std::vector<std::string> mismatches;
};

inline const std::vector<std::string>& reproduce_names() {
  static const std::vector<std::string> names = {"example1", "example3", "example4",
                                                 "scoring-vector", "stv-vector"};
  return names;
}

/// Replays one worked example with built-in inputs and compares against its printed values.
ReproduceResult reproduce(const std::string& name);

/// Built-in initial profiles and scripts of the worked examples.
Profile example1_profile();
Profile example3_profile();
Profile example4_profile();
std::vector<std::vector<Point>> example3_script(long iterations);
std::vector<std::vector<Point>> example4_script(long iterations);

struct VerifyRow {
  std::string check;
  std::string configuration;
  std::uint64_t seed = 0;
  bool pass = false;
  std::string observed;
  std::string predicted;
};

struct VerifyOptions {
  std::vector<std::string> checks;  // empty: all
  int seeds = 20;
  bool corrupt_rule = false;
};

inline const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {
      "winner-stability", "exact-bound",      "mean-convergence", "potential",
      "first-changed",    "kemeny-oracle",    "examples"};
  return names;
}

std::vector<VerifyRow> verify(const VerifyOptions& options);
std::string verify_csv(const std::vector<VerifyRow>& rows);

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_batch(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reproduce(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace delib
