#include "qnd/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "qnd/cli/numfmt.hpp"
#include "qnd/errors.hpp"
#include "qnd/fidelity_metrics.hpp"
#include "qnd/qnd_measurement.hpp"

namespace qnd::cli {

using nlohmann::ordered_json;

GridWavefunction build_signal(const ScenarioConfig& config, const GridSpec& grid) {
  return std::visit(
      [&](const auto& s) -> GridWavefunction {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianSignal>) {
          return gaussian_wavefunction(grid, s.mean, s.variance);
        } else if constexpr (std::is_same_v<S, FockSignal>) {
          return fock_wavefunction(grid, s.n);
        } else {
          // Coherent components are displaced vacua.
          const auto plus = gaussian_wavefunction(grid, s.displacement, 0.25);
          const auto minus = gaussian_wavefunction(grid, -s.displacement, 0.25);
          return superpose(plus, minus, 1.0, s.even ? 1.0 : -1.0);
        }
      },
      config.signal);
}

GridWavefunction build_signal(const ScenarioConfig& config) {
  return build_signal(config, config.grid());
}

double signal_variance(const ScenarioConfig& config, const GridWavefunction& signal) {
  if (const auto* g = std::get_if<GaussianSignal>(&config.signal)) return g->variance;
  return signal.variance();
}

namespace {

ordered_json point_json(const TradeoffPoint& p) {
  return {{"x", p.x}, {"F", p.F}, {"G", p.G}, {"sum", p.sum}};
}

ordered_json realization_json(const PhysicalOperatingPoint& op) {
  return {{"phi", op.setup.phi()},
          {"tau1", op.setup.tau1()},
          {"r_star", op.setup.r_star()},
          {"feedback_gain", op.setup.feedback_gain()},
          {"probe_r", op.probe.r},
          {"probe_direction",
           op.probe.direction == SqueezeDirection::Squeezed ? "squeezed" : "antisqueezed"},
          {"sigma_p2", op.probe.sigma_p2()},
          {"sigma_p_over_sigma_s", op.sigma_p_over_sigma_s()},
          {"N_p", op.N_p},
          {"x", op.recompute_x()}};
}

ordered_json realizations(const ScenarioConfig& config, double x, double sigma_s2) {
  return {{"fix_phi", realization_json(physical_from_x(x, sigma_s2, FixPhi{config.phi}))},
          {"fix_probe", realization_json(physical_from_x(x, sigma_s2, FixProbe{config.probe}))}};
}

}  // namespace

// --- sweep ------------------------------------------------------------------

std::vector<SweepRow> run_sweep(const ScenarioConfig& config) {
  const auto signal = build_signal(config);
  const double sigma_s2 = signal_variance(config, signal);
  const auto xs = log_space(config.sweep.x_lo, config.sweep.x_hi, config.sweep.n_points);
  spdlog::info("sweep: {} points over [{}, {}] for {}", xs.size(), config.sweep.x_lo,
               config.sweep.x_hi, describe(config.signal));

  const auto frontier = numeric_frontier(signal, xs, sigma_s2);
  std::vector<SweepRow> rows;
  rows.reserve(frontier.size());
  for (const auto& p : frontier) {
    const auto op = physical_from_x(p.x, sigma_s2, FixPhi{config.phi});
    rows.push_back({p, p.x * p.x * sigma_s2, op.N_p});
  }
  return rows;
}

void write_sweep(const std::vector<SweepRow>& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"x", r.point.x},
                     {"F", r.point.F},
                     {"G", r.point.G},
                     {"F+G", r.point.sum},
                     {"sigma_eff2", r.sigma_eff2},
                     {"N_p", r.N_p}});
    }
    out << arr.dump(2) << "\n";
    return;
  }
  out << "x,F,G,F+G,sigma_eff2,N_p\n";
  for (const auto& r : rows) {
    out << format_number(r.point.x) << ',' << format_number(r.point.F) << ','
        << format_number(r.point.G) << ',' << format_number(r.point.sum) << ','
        << format_number(r.sigma_eff2) << ',' << format_number(r.N_p) << '\n';
  }
}

// --- optimize ---------------------------------------------------------------

ordered_json run_optimize(const ScenarioConfig& config) {
  const auto signal = build_signal(config);
  const double sigma_s2 = signal_variance(config, signal);
  const bool gaussian = std::holds_alternative<GaussianSignal>(config.signal);
  const auto objective =
      gaussian ? FidelityObjective::closed_form() : FidelityObjective::numeric(signal, sigma_s2);
  spdlog::info("optimize: {} objective for {}", gaussian ? "closed-form" : "numeric",
               describe(config.signal));

  const TradeoffPoint best = optimize_sum(objective, kDefaultBracket);
  const TradeoffPoint equal = equal_fidelity_point(objective, kDefaultBracket);

  ordered_json report;
  report["signal"] = describe(config.signal);
  report["sigma_s2"] = sigma_s2;
  report["objective"] = gaussian ? "closed_form" : "numeric";
  report["x_m"] = best.x;
  report["F"] = best.F;
  report["G"] = best.G;
  report["x_e"] = equal.x;
  report["F_e"] = equal.F;
  report["G_e"] = equal.G;
  report["optimum"] = point_json(best);
  report["equal_fidelity"] = point_json(equal);
  report["physical"] = {{"optimum", realizations(config, best.x, sigma_s2)},
                        {"equal_fidelity", realizations(config, equal.x, sigma_s2)}};
  return report;
}

// --- simulate ---------------------------------------------------------------

SimulationResult run_simulate(const ScenarioConfig& config) {
  const auto signal = build_signal(config);
  const double sigma_s2 = signal_variance(config, signal);
  const SetupParams setup = config.setup();
  const double sigma_eff2 = effective_sigma2(setup, config.probe);
  const auto& sim = config.simulate;
  spdlog::info("simulate: {} samples, seed {}, sigma_eff2 = {}", sim.n_samples, sim.seed,
               sigma_eff2);

  const auto xs = sample_outcomes(signal, sigma_eff2, sim.n_samples, sim.seed);
  const double s = std::sin(setup.phi());

  SimulationResult result;
  result.outcomes.reserve(xs.size());
  double cond_var_sum = 0.0;
  for (double x : xs) {
    const HomodyneOutcome o = feedback_params(-x * s, setup);
    const GridWavefunction psi_x = conditional_state(signal, o.inferred_x, sigma_eff2);
    const double m = psi_x.mean();
    const double v = psi_x.variance();
    cond_var_sum += v;
    result.outcomes.push_back({o.X, o.inferred_x, o.alpha_star, setup.r_star(), m, v});
  }

  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= std::max(1.0, n - 1.0);

  ordered_json summary;
  summary["signal"] = describe(config.signal);
  summary["n_samples"] = sim.n_samples;
  summary["seed"] = sim.seed;
  summary["phi"] = setup.phi();
  summary["tau1"] = setup.tau1();
  summary["r_star"] = setup.r_star();
  summary["probe_r"] = config.probe.r;
  summary["sigma_eff2"] = sigma_eff2;
  summary["sigma_s2"] = sigma_s2;
  summary["x_parameter"] = std::sqrt(sigma_eff2 / sigma_s2);
  summary["sample_mean"] = mean;
  summary["sample_variance"] = var;
  summary["expected_variance"] = sigma_s2 + sigma_eff2;
  summary["mean_conditional_variance"] = cond_var_sum / n;
  result.summary = std::move(summary);
  return result;
}

void write_outcomes_csv(const SimulationResult& result, std::ostream& out) {
  out << "index,X,x,alpha_star,r_star,cond_mean,cond_variance\n";
  std::size_t i = 0;
  for (const auto& o : result.outcomes) {
    out << i++ << ',' << format_number(o.X) << ',' << format_number(o.inferred_x) << ','
        << format_number(o.alpha_star) << ',' << format_number(o.r_star) << ','
        << format_number(o.conditional_mean) << ',' << format_number(o.conditional_variance)
        << '\n';
  }
}

ordered_json simulation_json(const SimulationResult& result) {
  ordered_json rows = ordered_json::array();
  for (const auto& o : result.outcomes) {
    rows.push_back({{"X", o.X},
                    {"x", o.inferred_x},
                    {"alpha_star", o.alpha_star},
                    {"r_star", o.r_star},
                    {"cond_mean", o.conditional_mean},
                    {"cond_variance", o.conditional_variance}});
  }
  return {{"summary", result.summary}, {"outcomes", std::move(rows)}};
}

}  // namespace qnd::cli
