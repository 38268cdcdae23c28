// qnd: command-line front end for the tunable QND measurement simulator.
//
//   qnd sweep    [--config f] [--out f] [--format csv|json] [--grid-points n] [--x-max v]
//   qnd optimize [--config f] [--out f]
//   qnd simulate [--config f] [--out f] [--format csv|json] [--seed s]
//   qnd validate [--config f] [--out f]
//
// Exit codes: 0 success, 1 validation failure, 2 config error, 3 numeric error.
// QND_LOG=error|warn|info|debug sets stderr verbosity (default warn).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "qnd/cli/commands.hpp"
#include "qnd/cli/config.hpp"
#include "qnd/errors.hpp"

namespace {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericError = 3 };

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_points;
  std::optional<double> x_max;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("qnd");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("QND_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept real names.
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

void add_common(CLI::App* cmd, Options& opt, bool with_format, bool with_seed) {
  cmd->add_option("--config", opt.config_path, "Scenario file (key = value)");
  cmd->add_option("--out", opt.out_path, "Output file (default stdout)");
  cmd->add_option("--grid-points", opt.grid_points, "Override grid.n_points");
  cmd->add_option("--x-max", opt.x_max, "Override grid.x_max");
  if (with_format) {
    cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }
  if (with_seed) cmd->add_option("--seed", opt.seed, "Override simulate.seed");
}

qnd::cli::ScenarioConfig load(const Options& opt) {
  qnd::cli::ScenarioConfig config;
  if (!opt.config_path.empty()) config = qnd::cli::load_config(opt.config_path);
  qnd::cli::apply_overrides(config, {opt.grid_points, opt.x_max, opt.seed});
  return config;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw qnd::cli::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run(const std::string& command, const Options& opt) {
  using namespace qnd::cli;
  const ScenarioConfig config = load(opt);
  const auto format = opt.format == "json" ? OutputFormat::Json : OutputFormat::Csv;

  if (command == "sweep") {
    const auto rows = run_sweep(config);
    Output out(opt.out_path);
    write_sweep(rows, format, out.stream());
    return kOk;
  }
  if (command == "optimize") {
    const auto report = run_optimize(config);
    Output out(opt.out_path);
    out.stream() << report.dump(2) << "\n";
    return kOk;
  }
  if (command == "simulate") {
    const auto result = run_simulate(config);
    Output out(opt.out_path);
    if (format == OutputFormat::Json) {
      out.stream() << simulation_json(result).dump(2) << "\n";
    } else {
      write_outcomes_csv(result, out.stream());
      if (opt.out_path.empty()) {
        std::cerr << result.summary.dump(2) << "\n";
      } else {
        Output summary(opt.out_path + ".summary.json");
        summary.stream() << result.summary.dump(2) << "\n";
      }
    }
    return kOk;
  }
  // validate
  const auto report = run_validate(config);
  Output out(opt.out_path);
  report.write(out.stream());
  return report.all_passed() ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Tunable QND measurement of an optical field quadrature"};
  app.require_subcommand(1);

  Options opt;
  add_common(app.add_subcommand("sweep", "Information/disturbance frontier as a table"), opt, true,
             false);
  add_common(app.add_subcommand("optimize", "Optimal and equal-fidelity operating points"), opt,
             false, false);
  add_common(app.add_subcommand("simulate", "Monte Carlo run of the measurement chain"), opt, true,
             true);
  add_common(app.add_subcommand("validate", "Oracle and invariant checks"), opt, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const qnd::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const qnd::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericError;
  }
}
