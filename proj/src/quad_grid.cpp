#include "qnd/quad_grid.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qnd/errors.hpp"
#include "spectral.hpp"

namespace qnd {

namespace {

constexpr double kLeakageLimit = 1e-10;
constexpr unsigned kMaxFockNumber = 60;

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) fail(ErrorKind::GridMismatch, "operands are sampled on different grids");
}

}  // namespace

GridSpec::GridSpec(std::size_t n_points, double x_max) : n_points_(n_points), x_max_(x_max) {
  if (n_points < 16) {
    fail(ErrorKind::InvalidArgument,
         "grid needs at least 16 points, got " + std::to_string(n_points));
  }
  if (!std::isfinite(x_max) || x_max <= 0.0) {
    fail(ErrorKind::InvalidArgument, "grid half-width must be finite and positive");
  }
  dx_ = 2.0 * x_max / static_cast<double>(n_points - 1);
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> out(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) out[i] = node(i);
  return out;
}

GridSpec GridSpec::extended(std::size_t extra) const {
  return GridSpec(n_points_ + 2 * extra, x_max_ + static_cast<double>(extra) * dx_);
}

std::size_t GridSpec::nearest_index(double y) const noexcept {
  const double u = std::round((y + x_max_) / dx_);
  if (u <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(u), n_points_ - 1);
}

bool GridSpec::operator==(const GridSpec& other) const noexcept {
  return n_points_ == other.n_points_ && std::abs(x_max_ - other.x_max_) <= 1e-12 * x_max_;
}

GridSpec make_grid(std::size_t n_points, double x_max) { return GridSpec(n_points, x_max); }

GridSpec default_grid() { return GridSpec(1024, 8.0); }

// --- GridWavefunction -------------------------------------------------------

GridWavefunction::GridWavefunction(GridSpec grid, std::vector<Complex> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.n_points()) {
    fail(ErrorKind::InvalidArgument, "amplitude count does not match the grid");
  }
}

double GridWavefunction::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s * grid_.dx();
}

GridWavefunction GridWavefunction::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) fail(ErrorKind::ZeroNorm, "cannot normalize");
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<Complex> out(amplitudes_);
  for (auto& a : out) a *= scale;
  return GridWavefunction(grid_, std::move(out));
}

std::vector<double> GridWavefunction::density() const {
  std::vector<double> out(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(),
                 [](Complex a) { return std::norm(a); });
  return out;
}

double GridWavefunction::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) s += grid_.node(i) * std::norm(amplitudes_[i]);
  return s * grid_.dx() / norm_squared();
}

double GridWavefunction::second_moment() const {
  double s = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const double y = grid_.node(i);
    s += y * y * std::norm(amplitudes_[i]);
  }
  return s * grid_.dx() / norm_squared();
}

double GridWavefunction::variance() const {
  const double m = mean();
  double s = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const double d = grid_.node(i) - m;
    s += d * d * std::norm(amplitudes_[i]);
  }
  return s * grid_.dx() / norm_squared();
}

double GridWavefunction::boundary_leakage() const {
  return std::max(std::norm(amplitudes_.front()), std::norm(amplitudes_.back())) * grid_.dx();
}

// --- GridDensityMatrix ------------------------------------------------------

GridDensityMatrix::GridDensityMatrix(GridSpec grid, std::vector<Complex> elements)
    : grid_(grid), elements_(std::move(elements)) {
  if (elements_.size() != grid_.n_points() * grid_.n_points()) {
    fail(ErrorKind::InvalidArgument, "density matrix size does not match the grid");
  }
}

GridDensityMatrix GridDensityMatrix::pure(const GridWavefunction& psi) {
  const std::size_t n = psi.size();
  std::vector<Complex> el(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) el[i * n + j] = psi[i] * std::conj(psi[j]);
  }
  return GridDensityMatrix(psi.grid(), std::move(el));
}

Complex GridDensityMatrix::trace() const {
  const std::size_t n = dimension();
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s += elements_[i * n + i];
  return s * grid_.dx();
}

double GridDensityMatrix::hermiticity_error() const {
  const std::size_t n = dimension();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      worst = std::max(worst, std::abs(elements_[i * n + j] - std::conj(elements_[j * n + i])));
    }
  }
  return worst;
}

double GridDensityMatrix::min_eigenvalue() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * grid_.dx();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// --- builders ---------------------------------------------------------------

void require_support(const GridSpec& grid, double mean, double stddev, const char* what) {
  const double reach = std::abs(mean) + 6.0 * stddev;
  if (!(reach <= grid.x_max())) {
    std::ostringstream msg;
    msg << what << ": |mean| + 6 sigma = " << reach << " exceeds grid half-width "
        << grid.x_max();
    fail(ErrorKind::SupportViolation, msg.str());
  }
}

GridWavefunction gaussian_wavefunction(const GridSpec& grid, double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    fail(ErrorKind::InvalidArgument, "Gaussian needs finite mean and positive variance");
  }
  require_support(grid, mean, std::sqrt(variance), "gaussian_wavefunction");

  std::vector<Complex> amp(grid.n_points());
  const double pref = std::pow(2.0 * std::numbers::pi * variance, -0.25);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double d = grid.node(i) - mean;
    amp[i] = pref * std::exp(-d * d / (4.0 * variance));
  }
  return GridWavefunction(grid, std::move(amp)).normalized();
}

GridWavefunction fock_wavefunction(const GridSpec& grid, unsigned n) {
  if (n > kMaxFockNumber) {
    fail(ErrorKind::InvalidArgument,
         "Fock number " + std::to_string(n) + " above the recurrence bound " +
             std::to_string(kMaxFockNumber));
  }
  // Normalized Hermite functions h_k(xi) in xi = sqrt(2) x, then the
  // Jacobian 2^{1/4} maps them onto the x = (a + a^dagger)/2 quadrature.
  std::vector<Complex> amp(grid.n_points());
  const double jac = std::pow(2.0, 0.25);
  const double h0_pref = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double xi = std::numbers::sqrt2 * grid.node(i);
    double prev = 0.0;
    double cur = h0_pref * std::exp(-0.5 * xi * xi);
    for (unsigned k = 0; k < n; ++k) {
      const double kd = static_cast<double>(k);
      const double next = std::sqrt(2.0 / (kd + 1.0)) * xi * cur - std::sqrt(kd / (kd + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
    amp[i] = jac * cur;
  }
  GridWavefunction psi(grid, std::move(amp));
  if (psi.boundary_leakage() >= kLeakageLimit) {
    fail(ErrorKind::SupportViolation,
         "Fock state " + std::to_string(n) + " does not decay inside the grid");
  }
  return psi.normalized();
}

GridWavefunction superpose(const GridWavefunction& a, const GridWavefunction& b, Complex ca,
                           Complex cb) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> amp(a.size());
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = ca * a[i] + cb * b[i];
  GridWavefunction out(a.grid(), std::move(amp));
  const double scale = std::norm(ca) * a.norm_squared() + std::norm(cb) * b.norm_squared();
  if (!(out.norm_squared() > 1e-12 * scale)) {
    fail(ErrorKind::ZeroNorm, "superposition cancels to zero");
  }
  return out.normalized();
}

GridWavefunction displace(const GridWavefunction& psi, double alpha) {
  if (!std::isfinite(alpha)) fail(ErrorKind::InvalidArgument, "displacement must be finite");
  require_support(psi.grid(), psi.mean() + alpha, std::sqrt(psi.variance()), "displace");
  if (alpha == 0.0) return psi;
  return GridWavefunction(psi.grid(), spectral::translate(psi.amplitudes(), psi.grid().dx(), alpha));
}

GridWavefunction squeeze(const GridWavefunction& psi, double r) {
  if (!std::isfinite(r)) fail(ErrorKind::InvalidArgument, "squeeze parameter must be finite");
  const double shrink = std::exp(-r);
  require_support(psi.grid(), psi.mean() * shrink, std::sqrt(psi.variance()) * shrink, "squeeze");
  if (r == 0.0) return psi;

  const GridSpec& grid = psi.grid();
  std::vector<double> points(grid.n_points());
  const double stretch = std::exp(r);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = stretch * grid.node(i);
  auto amp = spectral::Interpolator(grid).resample(psi.amplitudes(), points);
  const double amp_scale = std::exp(0.5 * r);
  for (auto& a : amp) a *= amp_scale;
  return GridWavefunction(grid, std::move(amp));
}

Complex overlap(const GridWavefunction& a, const GridWavefunction& b) {
  require_same_grid(a.grid(), b.grid());
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s * a.grid().dx();
}

double pure_mixed_fidelity(const GridWavefunction& psi, const GridDensityMatrix& rho) {
  require_same_grid(psi.grid(), rho.grid());
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr.real() << " is not 1";
    fail(ErrorKind::InvalidArgument, msg.str());
  }
  const std::size_t n = psi.size();
  const auto el = rho.elements();
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    Complex row{0.0, 0.0};
    const Complex* r = el.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) row += r[j] * psi[j];
    s += std::conj(psi[i]) * row;
  }
  const double dx = psi.grid().dx();
  s *= dx * dx;
  if (std::abs(s.imag()) > 1e-10) {
    std::ostringstream msg;
    msg << "fidelity has imaginary part " << s.imag() << "; rho is not Hermitian";
    fail(ErrorKind::Numeric, msg.str());
  }
  return s.real();
}

}  // namespace qnd
