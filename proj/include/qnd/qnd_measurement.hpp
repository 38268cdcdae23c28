#pragma once

// The tunable QND measurement of the x quadrature: the signal is mixed with a
// squeezed-vacuum probe on a beam splitter of transmittivity cos^2(phi), the
// probe arm is homodyned, and the signal arm is corrected by a feedback
// displacement and a fixed squeeze.
//
// Once the apparatus is fixed the whole measurement is captured by one
// number, the variance sigma_eff^2 = sigma_p^2 / tan^2(phi) of the Gaussian
// blur applied to the signal quadrature. The single-mode functions below take
// that variance directly; two_mode_oracle() simulates the optical chain.

#include <complex>
#include <cstdint>
#include <vector>

#include "qnd/quad_grid.hpp"

namespace qnd {

enum class SqueezeDirection {
  Squeezed,      // variance 1/4 e^{-2r} along the measured quadrature
  AntiSqueezed,  // variance 1/4 e^{+2r}
};

struct ProbeSpec {
  double r = 0.0;
  SqueezeDirection direction = SqueezeDirection::Squeezed;

  ProbeSpec() = default;
  ProbeSpec(double r, SqueezeDirection direction);

  double sigma_p2() const;
  double photon_number() const;  // sinh^2 r
};

/// Beam-splitter angle and the quantities derived from it.
class SetupParams {
 public:
  /// phi must lie in the open interval (0, pi/2).
  explicit SetupParams(double phi);
  static SetupParams from_tau1(double tau1);

  double phi() const noexcept { return phi_; }
  double tau1() const noexcept { return tau1_; }
  /// ln cos(phi), always negative.
  double r_star() const noexcept { return r_star_; }
  /// alpha* per unit inferred x: tan(phi) sin(phi).
  double feedback_gain() const noexcept { return feedback_gain_; }

 private:
  double phi_;
  double tau1_;
  double r_star_;
  double feedback_gain_;
};

struct HomodyneOutcome {
  double X;           // raw reading on the probe arm
  double inferred_x;  // -X / sin(phi)
  double alpha_star;  // -X tan(phi)
};

/// Sampled density over inferred quadrature values.
class Distribution {
 public:
  Distribution(GridSpec grid, std::vector<double> densities);

  /// |psi(x)|^2 embedded on `grid`, which must share the signal's spacing and
  /// node alignment (e.g. an extension of it). Nodes outside the signal grid
  /// get zero density.
  static Distribution quadrature_of(const GridWavefunction& signal, const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  const std::vector<double>& densities() const noexcept { return densities_; }

  double total() const;     // sum p_i dx
  double mean() const;
  double variance() const;
  /// Linear interpolation between nodes; zero outside the grid.
  double density_at(double x) const;

 private:
  GridSpec grid_;
  std::vector<double> densities_;
};

double effective_sigma2(const SetupParams& setup, const ProbeSpec& probe);

/// Diagonal kernel M_x(y_i) = sqrt(G(y_i; x, sigma_eff2)).
std::vector<double> measurement_operator(double x, double sigma_eff2, const GridSpec& grid);

/// p(x) = |psi_s|^2 convolved with G(.; 0, sigma_eff2).
///
/// The result lives on an extension of the signal grid (same spacing, nodes
/// aligned) wide enough to hold the blurred tails, so the signal nodes are a
/// subset of the inferred-value nodes. Throws UnderResolved when
/// sqrt(sigma_eff2) < dx; in that regime the projective limit p = |psi_s|^2
/// should be used instead.
Distribution inferred_distribution(const GridWavefunction& signal, double sigma_eff2);

/// p(x) at a single inferred value, by direct quadrature over the signal grid.
double outcome_density(const GridWavefunction& signal, double x, double sigma_eff2);

/// psi_x(y) = psi_s(y) sqrt(G(y; x, sigma_eff2) / p(x)).
GridWavefunction conditional_state(const GridWavefunction& signal, double x, double sigma_eff2);

/// sum_x M_x rho M_x: rho(y, y') exp(-(y - y')^2 / (8 sigma_eff2)).
GridDensityMatrix nonselective_output(const GridWavefunction& signal, double sigma_eff2);

/// Seeded i.i.d. draws of the inferred value x (inverse CDF, linear between nodes).
std::vector<double> sample_outcomes(const GridWavefunction& signal, double sigma_eff2,
                                    std::size_t n, std::uint64_t seed);

HomodyneOutcome feedback_params(double X, const SetupParams& setup);

/// Coherent pump amplitude z such that alpha* = z sqrt(1 - tau3).
Complex displacement_hardware(double alpha_star, double tau3);

struct OracleResult {
  double density;          // p(x)
  GridWavefunction state;  // normalized conditional output
};

/// Two-mode wavefunction behind the beam splitter, sampled on the signal's
/// grid along both axes. Building it is the expensive step; conditioning on
/// many outcomes afterwards is cheap.
class BeamSplitterOutput {
 public:
  BeamSplitterOutput(const GridWavefunction& signal, const ProbeSpec& probe,
                     const SetupParams& setup);

  const GridSpec& grid() const noexcept { return grid_; }
  const SetupParams& setup() const noexcept { return setup_; }

  /// Psi'(u_i, v_j): signal-arm coordinate u (row), probe-arm coordinate v.
  Complex operator()(std::size_t i, std::size_t j) const noexcept {
    return psi_[i * grid_.n_points() + j];
  }

  /// Homodyne projection <X| on the probe arm (unnormalized signal-arm slice).
  std::vector<Complex> project(double X) const;

  /// Probability density of the homodyne reading X.
  double homodyne_density(double X) const;

  /// Full chain for inferred value x: projection at X = -x sin(phi), feedback
  /// displacement, corrective squeeze.
  OracleResult condition(double inferred_x) const;

 private:
  GridSpec grid_;
  SetupParams setup_;
  std::vector<Complex> psi_;
};

inline constexpr std::size_t kMaxTwoModePoints = 512;

OracleResult two_mode_oracle(const GridWavefunction& signal, const ProbeSpec& probe,
                             const SetupParams& setup, double inferred_x);

}  // namespace qnd
