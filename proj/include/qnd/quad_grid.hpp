#pragma once

// Single-mode states sampled on a uniform quadrature grid.
//
// Convention: the measured quadrature is x = (a + a^dagger) / 2, so the
// vacuum has <x^2> = 1/4. All moments, squeezing factors and fidelities in
// this library follow that convention.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qnd {

using Complex = std::complex<double>;

/// Uniform grid of n_points nodes spanning [-x_max, +x_max] inclusive.
class GridSpec {
 public:
  GridSpec(std::size_t n_points, double x_max);

  std::size_t n_points() const noexcept { return n_points_; }
  double x_max() const noexcept { return x_max_; }
  double dx() const noexcept { return dx_; }
  double node(std::size_t i) const noexcept { return -x_max_ + static_cast<double>(i) * dx_; }
  std::vector<double> nodes() const;

  /// Same spacing and node alignment, with `extra` nodes added on each side.
  GridSpec extended(std::size_t extra) const;

  /// Index of the node closest to y, clamped to the grid.
  std::size_t nearest_index(double y) const noexcept;

  bool operator==(const GridSpec& other) const noexcept;

 private:
  std::size_t n_points_;
  double x_max_;
  double dx_;
};

GridSpec make_grid(std::size_t n_points, double x_max);

/// 1024 nodes on [-8, 8].
GridSpec default_grid();

/// Pure state psi(y_i) on a grid.
class GridWavefunction {
 public:
  GridWavefunction(GridSpec grid, std::vector<Complex> amplitudes);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const noexcept { return amplitudes_[i]; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  double norm_squared() const;
  GridWavefunction normalized() const;

  std::vector<double> density() const;  // |psi(y_i)|^2
  double mean() const;
  double second_moment() const;
  double variance() const;

  /// max(|psi(-x_max)|^2, |psi(x_max)|^2) * dx.
  double boundary_leakage() const;

 private:
  GridSpec grid_;
  std::vector<Complex> amplitudes_;
};

/// rho(y_i, y_j), row-major.
class GridDensityMatrix {
 public:
  GridDensityMatrix(GridSpec grid, std::vector<Complex> elements);

  static GridDensityMatrix pure(const GridWavefunction& psi);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t dimension() const noexcept { return grid_.n_points(); }
  Complex operator()(std::size_t i, std::size_t j) const noexcept {
    return elements_[i * grid_.n_points() + j];
  }
  std::span<const Complex> elements() const noexcept { return elements_; }

  Complex trace() const;
  double hermiticity_error() const;

  /// Smallest eigenvalue of rho * dx (the discretized operator).
  double min_eigenvalue() const;

 private:
  GridSpec grid_;
  std::vector<Complex> elements_;
};

GridWavefunction gaussian_wavefunction(const GridSpec& grid, double mean, double variance);

/// n-th Fock state (Hermite function scaled to the vacuum variance 1/4).
GridWavefunction fock_wavefunction(const GridSpec& grid, unsigned n);

/// Normalized ca * a + cb * b.
GridWavefunction superpose(const GridWavefunction& a, const GridWavefunction& b, Complex ca,
                           Complex cb);

/// psi(y) -> psi(y - alpha), by a Fourier phase ramp.
GridWavefunction displace(const GridWavefunction& psi, double alpha);

/// psi(y) -> e^{r/2} psi(e^r y); the quadrature variance scales by e^{-2r}.
GridWavefunction squeeze(const GridWavefunction& psi, double r);

Complex overlap(const GridWavefunction& a, const GridWavefunction& b);

/// <psi| rho |psi> for a pure reference state.
double pure_mixed_fidelity(const GridWavefunction& psi, const GridDensityMatrix& rho);

/// |mean| + 6 sigma must fit inside the grid; throws SupportViolation otherwise.
void require_support(const GridSpec& grid, double mean, double stddev, const char* what);

}  // namespace qnd
