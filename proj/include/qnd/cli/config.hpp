#pragma once

// Scenario files for the qnd command-line tool.
//
// Grammar: one `key = value` pair per line; `#` starts a comment; blank lines
// are ignored; keys are case-sensitive and may appear once.
//
//   signal            gaussian | fock | cat   (required in a file)
//   signal.variance   Gaussian quadrature variance          (default 0.25)
//   signal.mean       Gaussian centre                       (default 0)
//   signal.n          Fock number                           (default 1)
//   signal.displacement  cat component offset               (default 2)
//   signal.parity     even | odd                            (default even)
//   probe.r           probe squeezing >= 0                  (default 0)
//   probe.direction   squeezed | antisqueezed               (default squeezed)
//   setup.phi         beam-splitter angle in (0, pi/2)      (default pi/4)
//   setup.tau1        transmittivity in (0, 1); excludes setup.phi
//   grid.n_points     >= 16                                 (default 1024)
//   grid.x_max        > 0                                   (default 8)
//   sweep.x_lo, sweep.x_hi, sweep.n_points                  (0.2, 5, 50)
//   simulate.n_samples, simulate.seed                       (100000, 1)
//
// Precedence: command-line flags > file > defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "qnd/qnd_measurement.hpp"
#include "qnd/quad_grid.hpp"

namespace qnd::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GaussianSignal {
  double variance = 0.25;
  double mean = 0.0;
};
struct FockSignal {
  unsigned n = 1;
};
struct CatSignal {
  double displacement = 2.0;
  bool even = true;
};
using SignalConfig = std::variant<GaussianSignal, FockSignal, CatSignal>;

struct SweepRun {
  double x_lo = 0.2;
  double x_hi = 5.0;
  std::size_t n_points = 50;
};
struct OptimizeRun {};
struct SimulateRun {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 1;
};
struct ValidateRun {};
using RunConfig = std::variant<SweepRun, OptimizeRun, SimulateRun, ValidateRun>;

struct ScenarioConfig {
  SignalConfig signal = GaussianSignal{};
  ProbeSpec probe{};
  double phi = 0.7853981633974483;  // pi/4
  std::size_t grid_points = 1024;
  double x_max = 8.0;
  SweepRun sweep{};
  SimulateRun simulate{};

  SetupParams setup() const { return SetupParams(phi); }
  GridSpec grid() const { return GridSpec(grid_points, x_max); }
  /// Run parameters for a subcommand name.
  RunConfig run_for(std::string_view command) const;
};

/// Parses scenario text. `source` names the origin in diagnostics.
ScenarioConfig parse_config(std::string_view text, std::string_view source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

struct Overrides {
  std::optional<std::size_t> grid_points;
  std::optional<double> x_max;
  std::optional<std::uint64_t> seed;
};
void apply_overrides(ScenarioConfig& config, const Overrides& overrides);

/// Range checks shared by file parsing and flag overrides.
void validate(const ScenarioConfig& config);

std::string describe(const SignalConfig& signal);

}  // namespace qnd::cli
