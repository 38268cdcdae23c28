#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "qnd/cli/commands.hpp"
#include "qnd/errors.hpp"
#include "qnd/fidelity_metrics.hpp"
#include "qnd/qnd_measurement.hpp"

namespace qnd::cli {

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::size_t ValidationReport::passed_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
}

void ValidationReport::write(std::ostream& out) const {
  for (const auto& c : checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  }
  out << passed_count() << "/" << checks.size() << " checks passed\n";
}

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

Outcome within(double error, double tol) {
  return {error <= tol, "max error " + sci(error) + " (tolerance " + sci(tol) + ")"};
}

// Signal at the same x_max but with at most `cap` nodes, for the O(n^2)-and-up checks.
GridWavefunction capped_signal(const ScenarioConfig& config, std::size_t cap) {
  return build_signal(config, GridSpec(std::min(config.grid_points, cap), config.x_max));
}

Outcome check_normalization(const GridWavefunction& signal) {
  const double err = std::abs(signal.norm_squared() - 1.0);
  const double leak = signal.boundary_leakage();
  return {err <= 1e-9 && leak < 1e-10,
          "norm error " + sci(err) + ", boundary leakage " + sci(leak)};
}

Outcome check_completeness(const GridWavefunction& signal, double sigma_eff2) {
  const GridSpec& g = signal.grid();
  const auto extra = static_cast<std::size_t>(std::ceil(8.0 * std::sqrt(sigma_eff2) / g.dx()));
  const GridSpec xg = g.extended(extra);
  std::vector<double> acc(g.n_points(), 0.0);
  for (std::size_t k = 0; k < xg.n_points(); ++k) {
    const auto m = measurement_operator(xg.node(k), sigma_eff2, g);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += m[i] * m[i] * xg.dx();
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (std::abs(g.node(i)) <= 0.5 * g.x_max()) worst = std::max(worst, std::abs(acc[i] - 1.0));
  }
  return within(worst, 1e-6);
}

Outcome check_total_probability(const GridWavefunction& signal, double sigma_eff2) {
  const Distribution p = inferred_distribution(signal, sigma_eff2);
  const GridSpec& xg = p.grid();
  std::vector<double> acc(signal.size(), 0.0);
  for (std::size_t k = 0; k < xg.n_points(); ++k) {
    const double pk = p.densities()[k];
    if (!(pk > 1e-290)) continue;
    const auto psi_x = conditional_state(signal, xg.node(k), sigma_eff2);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pk * std::norm(psi_x[i]) * xg.dx();
  }
  const auto dens = signal.density();
  double worst = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) worst = std::max(worst, std::abs(acc[i] - dens[i]));
  return within(worst, 1e-7);
}

// Sum over outcomes of M_x rho M_x, integrated on a grid four times finer than
// the state's, against the closed-form decoherence kernel.
Outcome check_decoherence_kernel(const GridWavefunction& signal, double sigma_eff2) {
  const GridSpec& g = signal.grid();
  const std::size_t n = g.n_points();
  const double step = g.dx() / 4.0;
  const double reach = g.x_max() + 10.0 * std::sqrt(sigma_eff2);
  const auto nx = static_cast<std::size_t>(std::ceil(2.0 * reach / step)) + 1;
  std::vector<Complex> acc(n * n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < nx; ++k) {
    const double x = -reach + static_cast<double>(k) * step;
    const auto m = measurement_operator(x, sigma_eff2, g);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex a = m[i] * signal[i] * step;
      for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += a * m[j] * std::conj(signal[j]);
    }
  }
  const GridDensityMatrix sigma = nonselective_output(signal, sigma_eff2);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(acc[i * n + j] - sigma(i, j)));
  }
  return within(worst, 1e-8);
}

Outcome check_two_mode(const GridWavefunction& signal, const ScenarioConfig& config) {
  const SetupParams setup = config.setup();
  const double sigma_eff2 = effective_sigma2(setup, config.probe);
  const BeamSplitterOutput bs(signal, config.probe, setup);
  const GridSpec& g = signal.grid();
  const double s = std::sin(setup.phi());

  double p_err = 0.0;
  for (std::size_t i = 0; i < g.n_points(); ++i) {
    const double x = g.node(i);
    if (std::abs(x) > 3.0) continue;
    const double oracle = s * bs.homodyne_density(-x * s);
    p_err = std::max(p_err, std::abs(oracle - outcome_density(signal, x, sigma_eff2)));
  }
  double l1 = 0.0;
  for (double x : {-1.0, 0.0, 0.5, 1.0}) {
    const OracleResult o = bs.condition(x);
    const GridWavefunction c = conditional_state(signal, x, sigma_eff2);
    double d = 0.0;
    for (std::size_t i = 0; i < g.n_points(); ++i) d += std::abs(std::abs(o.state[i]) - std::abs(c[i]));
    l1 = std::max(l1, d * g.dx());
  }
  return {p_err <= 1e-6 && l1 <= 1e-6,
          "p(x) error " + sci(p_err) + ", conditional L1 " + sci(l1) + " (tolerance 1.0e-06)"};
}

Outcome check_disturbance(const GridWavefunction& signal, double sigma_eff2) {
  // F = integral dx p(x) |<psi_s|psi_x>|^2, one outcome at a time.
  const Distribution p = inferred_distribution(signal, sigma_eff2);
  double brute = 0.0;
  for (std::size_t k = 0; k < p.grid().n_points(); ++k) {
    const double pk = p.densities()[k];
    if (!(pk > 1e-290)) continue;
    brute += pk * std::norm(overlap(signal, conditional_state(signal, p.grid().node(k), sigma_eff2)));
  }
  brute *= p.grid().dx();
  const double f = grid_F(signal, sigma_eff2);
  Outcome out = within(std::abs(f - brute), 1e-6);
  out.detail = "F = " + std::to_string(f) + ", " + out.detail;
  return out;
}

Outcome check_closed_form_sweep(const GridWavefunction& signal, double sigma_s2) {
  double f_err = 0.0;
  double g_err = 0.0;
  for (double x : log_space(0.2, 5.0, 20)) {
    const double s2 = x * x * sigma_s2;
    f_err = std::max(f_err, std::abs(grid_F(signal, s2) - gaussian_F(TradeoffVariable(x))));
    g_err = std::max(g_err, std::abs(grid_G(signal, s2) - gaussian_G(TradeoffVariable(x))));
  }
  return {f_err <= 1e-4 && g_err <= 1e-5,
          "|dF| " + sci(f_err) + " (1.0e-04), |dG| " + sci(g_err) + " (1.0e-05)"};
}

Outcome check_frontier_monotone(const GridWavefunction& signal, double sigma_s2) {
  const auto xs = log_space(0.2, 5.0, 12);
  const auto frontier = numeric_frontier(signal, xs, sigma_s2);
  bool ok = true;
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    ok = ok && frontier[i].F > frontier[i - 1].F && frontier[i].G < frontier[i - 1].G;
  }
  return {ok, ok ? "F increasing, G decreasing over x in [0.2, 5]" : "frontier not monotone"};
}

Outcome check_optimum() {
  const auto p = optimize_sum(FidelityObjective::closed_form(), kDefaultBracket);
  std::ostringstream s;
  s.precision(6);
  s << "x_m = " << p.x << ", F = " << p.F << ", G = " << p.G;
  return {p.x >= 1.15 && p.x <= 1.25 && p.F >= 0.85 && p.F <= 0.87 && p.G >= 0.90 && p.G <= 0.92,
          s.str()};
}

Outcome check_equal_point() {
  const auto p = equal_fidelity_point(FidelityObjective::closed_form(), {0.5, 3.0});
  std::ostringstream s;
  s.precision(6);
  s << "x_e = " << p.x << ", F = G = " << p.F;
  return {p.x >= 1.25 && p.x <= 1.38 && p.F >= 0.87 && p.F <= 0.89 && std::abs(p.F - p.G) < 1e-9,
          s.str()};
}

}  // namespace

ValidationReport run_validate(const ScenarioConfig& config) {
  ValidationReport report;
  auto run = [&](const std::string& name, const std::function<Outcome()>& body) {
    spdlog::debug("validate: {}", name);
    try {
      Outcome o = body();
      report.checks.push_back({name, o.passed, o.detail});
    } catch (const std::exception& e) {
      report.checks.push_back({name, false, e.what()});
    }
  };

  const double sigma_eff2 = effective_sigma2(config.setup(), config.probe);
  std::optional<GridWavefunction> signal;
  run("signal normalization", [&] {
    signal.emplace(build_signal(config));
    return check_normalization(*signal);
  });
  if (!signal) return report;
  const double sigma_s2 = signal_variance(config, *signal);

  run("POVM completeness", [&] { return check_completeness(*signal, sigma_eff2); });
  run("total probability", [&] { return check_total_probability(*signal, sigma_eff2); });
  run("decoherence kernel vs outcome quadrature", [&] {
    return check_decoherence_kernel(capped_signal(config, 256), sigma_eff2);
  });
  run("two-mode oracle equivalence", [&] {
    return check_two_mode(capped_signal(config, kMaxTwoModePoints), config);
  });
  run("disturbance fidelity vs outcome average", [&] { return check_disturbance(*signal, sigma_eff2); });
  if (std::holds_alternative<GaussianSignal>(config.signal)) {
    run("grid vs closed-form fidelities", [&] { return check_closed_form_sweep(*signal, sigma_s2); });
  } else {
    run("frontier monotonicity", [&] { return check_frontier_monotone(*signal, sigma_s2); });
  }
  run("optimal trade-off point", check_optimum);
  run("equal-fidelity point", check_equal_point);
  return report;
}

}  // namespace qnd::cli
