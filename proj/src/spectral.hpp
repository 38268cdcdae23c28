#pragma once

// Band-limited (trigonometric) operations on uniformly sampled data. The
// samples are treated as one period of a periodic function; callers are
// responsible for keeping the physical support away from the period seam.

#include <complex>
#include <span>
#include <vector>

#include "qnd/quad_grid.hpp"

namespace qnd::spectral {

/// f(y) -> f(y - shift) via a phase ramp in Fourier space.
std::vector<Complex> translate(std::span<const Complex> samples, double dx, double shift);

/// Periodic-sinc interpolation on a fixed grid. Points outside the sampled
/// window (by more than half a spacing) evaluate to zero.
class Interpolator {
 public:
  explicit Interpolator(const GridSpec& grid);

  /// Fills `weights` (size n_points) with the kernel values at y, so that
  /// f(y) = sum_j weights[j] * f_j. Returns false when y is outside the window.
  bool weights(double y, std::span<double> weights) const;

  Complex evaluate(std::span<const Complex> samples, double y) const;

  std::vector<Complex> resample(std::span<const Complex> samples,
                                std::span<const double> points) const;

 private:
  GridSpec grid_;
  std::vector<double> cos_b_;
  std::vector<double> sin_b_;
};

}  // namespace qnd::spectral
