#pragma once

// Operating points on the information/disturbance frontier and their
// realization in terms of beam-splitter angle and probe squeezing.

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "qnd/qnd_measurement.hpp"
#include "qnd/quad_grid.hpp"

namespace qnd {

struct TradeoffPoint {
  double x;
  double F;
  double G;
  double sum;  // F + G

  static TradeoffPoint at(double x, double F, double G) { return {x, F, G, F + G}; }
};

/// F(x) and G(x) as callables.
struct FidelityObjective {
  std::function<double(double)> F;
  std::function<double(double)> G;

  TradeoffPoint evaluate(double x) const { return TradeoffPoint::at(x, F(x), G(x)); }

  /// Gaussian-signal closed forms.
  static FidelityObjective closed_form();
  /// Grid fidelities of `signal`, with sigma_eff = x * sigma_s.
  static FidelityObjective numeric(GridWavefunction signal, double sigma_s2);
};

struct Bracket {
  double lo;
  double hi;
};

inline constexpr Bracket kDefaultBracket{0.05, 20.0};

/// Golden-section search on log(x) for max F + G. The objective is sampled
/// first; an interior dip aborts with NotUnimodal and a flat objective returns
/// the bracket midpoint.
TradeoffPoint optimize_sum(const FidelityObjective& objective, Bracket bracket = kDefaultBracket);

/// Bisection on F - G to 1e-10 in x.
TradeoffPoint equal_fidelity_point(const FidelityObjective& objective, Bracket bracket);

struct FixPhi {
  double phi;
};
struct FixProbe {
  ProbeSpec probe;
};
using RealizationConstraint = std::variant<FixPhi, FixProbe>;

struct PhysicalOperatingPoint {
  SetupParams setup;
  ProbeSpec probe;
  double sigma_s2;
  double x;
  double N_p;

  /// sigma_p / (sigma_s tan(phi)) recomputed from the fields.
  double recompute_x() const;
  double sigma_p_over_sigma_s() const;
};

/// Realizes x_target with either the beam splitter or the probe held fixed.
PhysicalOperatingPoint physical_from_x(double x_target, double sigma_s2,
                                       const RealizationConstraint& constraint);

/// Mean probe photon number sinh^2 r.
double probe_energy(double r);

std::vector<TradeoffPoint> numeric_frontier(const GridWavefunction& signal,
                                            std::span<const double> x_values, double sigma_s2);

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t n);

}  // namespace qnd
