#pragma once

// Figures of merit for a QND measurement:
//   G  information gain: squared Bhattacharyya coefficient between the
//      inferred-value density and the true quadrature density.
//   F  disturbance: <psi_s| sigma |psi_s> between the pure input and the
//      non-selective output (Uhlmann fidelity for a pure argument).
// For Gaussian signals both depend only on x = sigma_p / (sigma_s tan(phi)).

#include "qnd/qnd_measurement.hpp"
#include "qnd/quad_grid.hpp"

namespace qnd {

/// Strictly positive trade-off variable.
class TradeoffVariable {
 public:
  explicit TradeoffVariable(double x);
  static TradeoffVariable from_physical(double sigma_p, double sigma_s, double phi);

  double value() const noexcept { return x_; }

 private:
  double x_;
};

/// (sum_i sqrt(p_i q_i) dx)^2. Both inputs must be normalized to 1e-6.
double statistical_fidelity(const Distribution& p, const Distribution& q);

/// sqrt(2) x / sqrt(1 + 2 x^2)
double gaussian_F(TradeoffVariable x);
/// 2 sqrt(1 + x^2) / (2 + x^2)
double gaussian_G(TradeoffVariable x);

double grid_F(const GridWavefunction& signal, double sigma_eff2);

/// Below grid resolution (sqrt(sigma_eff2) < dx) the measurement is taken
/// as projective and G = 1.
double grid_G(const GridWavefunction& signal, double sigma_eff2);

}  // namespace qnd
