#include "qnd/qnd_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

// Blurred tails are kept out to this many kernel standard deviations.
constexpr double kTailSigmas = 8.0;

double gaussian_density(double d, double variance) {
  return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

void require_positive_variance(double sigma_eff2) {
  if (!(sigma_eff2 > 0.0) || !std::isfinite(sigma_eff2)) {
    fail(ErrorKind::InvalidArgument, "sigma_eff^2 must be finite and positive");
  }
}

}  // namespace

// --- parameter types --------------------------------------------------------

ProbeSpec::ProbeSpec(double r_, SqueezeDirection direction_) : r(r_), direction(direction_) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    fail(ErrorKind::InvalidArgument, "probe squeezing r must be finite and non-negative");
  }
}

double ProbeSpec::sigma_p2() const {
  const double sign = direction == SqueezeDirection::Squeezed ? -1.0 : 1.0;
  return 0.25 * std::exp(sign * 2.0 * r);
}

double ProbeSpec::photon_number() const {
  const double s = std::sinh(r);
  return s * s;
}

SetupParams::SetupParams(double phi) : phi_(phi) {
  if (!(phi > 0.0 && phi < std::numbers::pi / 2.0)) {
    std::ostringstream msg;
    msg << "beam-splitter angle phi = " << phi << " outside (0, pi/2)";
    fail(ErrorKind::InvalidArgument, msg.str());
  }
  const double c = std::cos(phi);
  tau1_ = c * c;
  r_star_ = std::log(c);
  feedback_gain_ = std::tan(phi) * std::sin(phi);
}

SetupParams SetupParams::from_tau1(double tau1) {
  if (!(tau1 > 0.0 && tau1 < 1.0)) {
    fail(ErrorKind::InvalidArgument, "transmittivity tau1 must lie in (0, 1)");
  }
  return SetupParams(std::acos(std::sqrt(tau1)));
}

// --- Distribution -----------------------------------------------------------

Distribution::Distribution(GridSpec grid, std::vector<double> densities)
    : grid_(grid), densities_(std::move(densities)) {
  if (densities_.size() != grid_.n_points()) {
    fail(ErrorKind::InvalidArgument, "density count does not match the grid");
  }
  for (double p : densities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      fail(ErrorKind::InvalidArgument, "densities must be finite and non-negative");
    }
  }
}

Distribution Distribution::quadrature_of(const GridWavefunction& signal, const GridSpec& grid) {
  const GridSpec& sg = signal.grid();
  if (std::abs(grid.dx() - sg.dx()) > 1e-12 * sg.dx() || grid.n_points() < sg.n_points()) {
    fail(ErrorKind::GridMismatch, "target grid must extend the signal grid");
  }
  const double offset = (grid.x_max() - sg.x_max()) / sg.dx();
  const auto extra = static_cast<std::size_t>(std::llround(offset));
  if (std::abs(offset - static_cast<double>(extra)) > 1e-6 ||
      grid.n_points() != sg.n_points() + 2 * extra) {
    fail(ErrorKind::GridMismatch, "target grid nodes are not aligned with the signal grid");
  }
  std::vector<double> p(grid.n_points(), 0.0);
  const auto dens = signal.density();
  std::copy(dens.begin(), dens.end(), p.begin() + static_cast<std::ptrdiff_t>(extra));
  return Distribution(grid, std::move(p));
}

double Distribution::total() const {
  double s = 0.0;
  for (double p : densities_) s += p;
  return s * grid_.dx();
}

double Distribution::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < densities_.size(); ++i) s += grid_.node(i) * densities_[i];
  return s * grid_.dx() / total();
}

double Distribution::variance() const {
  const double m = mean();
  double s = 0.0;
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    const double d = grid_.node(i) - m;
    s += d * d * densities_[i];
  }
  return s * grid_.dx() / total();
}

double Distribution::density_at(double x) const {
  const double u = (x + grid_.x_max()) / grid_.dx();
  if (u < 0.0 || u > static_cast<double>(densities_.size() - 1)) return 0.0;
  const auto i = std::min(static_cast<std::size_t>(u), densities_.size() - 2);
  const double t = u - static_cast<double>(i);
  return (1.0 - t) * densities_[i] + t * densities_[i + 1];
}

// --- single-mode measurement ------------------------------------------------

double effective_sigma2(const SetupParams& setup, const ProbeSpec& probe) {
  const double t = std::tan(setup.phi());
  return probe.sigma_p2() / (t * t);
}

std::vector<double> measurement_operator(double x, double sigma_eff2, const GridSpec& grid) {
  require_positive_variance(sigma_eff2);
  std::vector<double> m(grid.n_points());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::sqrt(gaussian_density(grid.node(i) - x, sigma_eff2));
  }
  return m;
}

Distribution inferred_distribution(const GridWavefunction& signal, double sigma_eff2) {
  require_positive_variance(sigma_eff2);
  const GridSpec& sg = signal.grid();
  const double dx = sg.dx();
  const double sigma = std::sqrt(sigma_eff2);
  if (sigma < dx) {
    std::ostringstream msg;
    msg << "kernel width " << sigma << " below grid spacing " << dx
        << "; use the projective limit p(x) = |psi(x)|^2";
    fail(ErrorKind::UnderResolved, msg.str());
  }

  const auto extra = static_cast<std::size_t>(std::ceil(kTailSigmas * sigma / dx));
  const GridSpec out_grid = sg.extended(extra);
  const std::size_t n = sg.n_points();
  const std::size_t m = out_grid.n_points();

  // The kernel depends only on the node offset (i - extra) - j; index it by
  // k = i - j + n - 1 so that every offset maps into [0, m + n - 2].
  const std::size_t span = m + n - 1;
  std::vector<double> kernel(span);
  const auto origin = static_cast<std::ptrdiff_t>(extra + n - 1);
  for (std::size_t k = 0; k < span; ++k) {
    const double d = static_cast<double>(static_cast<std::ptrdiff_t>(k) - origin) * dx;
    kernel[k] = gaussian_density(d, sigma_eff2);
  }

  const auto dens = signal.density();
  std::vector<double> p(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    const std::size_t base = i + n - 1;
    for (std::size_t j = 0; j < n; ++j) acc += dens[j] * kernel[base - j];
    p[i] = acc * dx;
  }
  return Distribution(out_grid, std::move(p));
}

double outcome_density(const GridWavefunction& signal, double x, double sigma_eff2) {
  require_positive_variance(sigma_eff2);
  const GridSpec& g = signal.grid();
  double acc = 0.0;
  for (std::size_t j = 0; j < signal.size(); ++j) {
    acc += std::norm(signal[j]) * gaussian_density(g.node(j) - x, sigma_eff2);
  }
  return acc * g.dx();
}

GridWavefunction conditional_state(const GridWavefunction& signal, double x, double sigma_eff2) {
  const auto kernel = measurement_operator(x, sigma_eff2, signal.grid());
  std::vector<Complex> amp(signal.size());
  double p = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    amp[i] = signal[i] * kernel[i];
    p += std::norm(amp[i]);
  }
  p *= signal.grid().dx();
  if (!(p > 1e-300)) {
    std::ostringstream msg;
    msg << "outcome x = " << x << " has vanishing probability density";
    fail(ErrorKind::VanishingProbability, msg.str());
  }
  const double scale = 1.0 / std::sqrt(p);
  for (auto& a : amp) a *= scale;
  return GridWavefunction(signal.grid(), std::move(amp));
}

GridDensityMatrix nonselective_output(const GridWavefunction& signal, double sigma_eff2) {
  require_positive_variance(sigma_eff2);
  const std::size_t n = signal.size();
  const double dx = signal.grid().dx();
  std::vector<double> damping(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = static_cast<double>(k) * dx;
    damping[k] = std::exp(-d * d / (8.0 * sigma_eff2));
  }
  std::vector<Complex> el(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      el[i * n + j] = signal[i] * std::conj(signal[j]) * damping[k];
    }
  }
  return GridDensityMatrix(signal.grid(), std::move(el));
}

std::vector<double> sample_outcomes(const GridWavefunction& signal, double sigma_eff2,
                                    std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "sample count must be positive");
  require_positive_variance(sigma_eff2);

  Distribution dist = std::sqrt(sigma_eff2) < signal.grid().dx()
                          ? Distribution::quadrature_of(signal, signal.grid())
                          : inferred_distribution(signal, sigma_eff2);
  const auto& p = dist.densities();
  const GridSpec& g = dist.grid();

  std::vector<double> cdf(p.size(), 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) cdf[i] = cdf[i - 1] + 0.5 * (p[i - 1] + p[i]) * g.dx();
  const double total = cdf.back();
  if (!(total > 0.0)) fail(ErrorKind::Numeric, "outcome distribution has no mass");

  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) {
    // 53 random mantissa bits, uniform on [0, 1).
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double target = u * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    std::size_t hi = static_cast<std::size_t>(it - cdf.begin());
    hi = std::clamp<std::size_t>(hi, 1, cdf.size() - 1);
    const std::size_t lo = hi - 1;
    const double width = cdf[hi] - cdf[lo];
    const double t = width > 0.0 ? (target - cdf[lo]) / width : 0.5;
    x = g.node(lo) + t * g.dx();
  }
  return out;
}

HomodyneOutcome feedback_params(double X, const SetupParams& setup) {
  const double phi = setup.phi();
  return HomodyneOutcome{X, -X / std::sin(phi), -X * std::tan(phi)};
}

Complex displacement_hardware(double alpha_star, double tau3) {
  if (!(tau3 > 0.0 && tau3 < 1.0)) {
    fail(ErrorKind::InvalidArgument,
         "BS3 transmittivity must lie in (0, 1); tau3 = 1 is the idealized limit");
  }
  return {alpha_star / std::sqrt(1.0 - tau3), 0.0};
}

}  // namespace qnd
