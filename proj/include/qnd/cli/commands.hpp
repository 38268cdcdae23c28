#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnd/cli/config.hpp"
#include "qnd/quad_grid.hpp"
#include "qnd/tradeoff_optimizer.hpp"

namespace qnd::cli {

enum class OutputFormat { Csv, Json };

GridWavefunction build_signal(const ScenarioConfig& config, const GridSpec& grid);
GridWavefunction build_signal(const ScenarioConfig& config);

/// Exact variance for Gaussian signals, grid quadrature otherwise.
double signal_variance(const ScenarioConfig& config, const GridWavefunction& signal);

// --- sweep ------------------------------------------------------------------

struct SweepRow {
  TradeoffPoint point;
  double sigma_eff2;
  double N_p;  // probe photons realizing x at the configured phi
};

std::vector<SweepRow> run_sweep(const ScenarioConfig& config);
void write_sweep(const std::vector<SweepRow>& rows, OutputFormat format, std::ostream& out);

// --- optimize ---------------------------------------------------------------

nlohmann::ordered_json run_optimize(const ScenarioConfig& config);

// --- simulate ---------------------------------------------------------------

struct SimulatedOutcome {
  double X;
  double inferred_x;
  double alpha_star;
  double r_star;
  double conditional_mean;
  double conditional_variance;
};

struct SimulationResult {
  std::vector<SimulatedOutcome> outcomes;
  nlohmann::ordered_json summary;
};

SimulationResult run_simulate(const ScenarioConfig& config);
void write_outcomes_csv(const SimulationResult& result, std::ostream& out);
nlohmann::ordered_json simulation_json(const SimulationResult& result);

// --- validate ---------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::size_t passed_count() const;
  void write(std::ostream& out) const;
};

ValidationReport run_validate(const ScenarioConfig& config);

}  // namespace qnd::cli
