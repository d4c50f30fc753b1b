#pragma once

// Command-line scenarios: configuration parsing and artifact generation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace squeeze {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { Oat, Tact, Pulses, Drive, Husimi, Sweep, Noise };

std::string scenario_name(Scenario s);

struct ScenarioConfig {
  Scenario scenario = Scenario::Oat;
  int n = 1250;
  int nc = 50;
  bool freeze = false;
  double eta = 0.001;
  int realizations = 100;
  std::string draw_scope = "per-pulse";
  double omega_over_chi = 2.0 * 3.14159265358979323846 * 2e4;
  double omega0_over_omega = 0.9057;
  double phase = -0.5 * 3.14159265358979323846;
  int steps_per_period = 64;
  int grid_theta = 128;
  int grid_phi = 256;
  std::uint64_t seed = 42;
  int samples = 601;
  std::optional<double> chi_hz;
  std::string out = "out";
  std::vector<int> n_list{100, 200, 400, 800, 1600};
  std::string model = "oat";
  std::string state;
};

/// Parses `subcommand [flags]`, merging a flat JSON file given by --config
/// (keys are flag names without dashes; flags on the command line win).
/// Returns nullopt after printing help to `out`. Throws UsageError naming
/// the offending field.
std::optional<ScenarioConfig> parse_config(const std::vector<std::string>& args, std::ostream& out);

/// Flat JSON echo of every field.
std::string config_json(const ScenarioConfig& config);

/// Runs the scenario and writes its artifacts under config.out. Returns the
/// process exit status; failures are reported on `err`.
int run_scenario(const ScenarioConfig& config, std::ostream& log, std::ostream& err);

}  // namespace squeeze
