#include <cmath>
#include <sstream>

#include "qnd/errors.hpp"
#include "qnd/qnd_measurement.hpp"
#include "spectral.hpp"

namespace qnd {

// The beam splitter acts on the product wavefunction as a rotation of the
// coordinate plane:
//
//   Psi'(u, v) = psi_s(u cos(phi) - v sin(phi)) * psi_p(u sin(phi) + v cos(phi)).
//
// With this orientation the slice at v = -x sin(phi), displaced by alpha* and
// compressed by cos(phi), is psi_s(y) psi_p(tan(phi) (y - x)), which is the
// homodyne kernel of the inferred-value density. The probe is even, so the
// opposite orientation only flips the sign of the reading.
BeamSplitterOutput::BeamSplitterOutput(const GridWavefunction& signal, const ProbeSpec& probe,
                                       const SetupParams& setup)
    : grid_(signal.grid()), setup_(setup) {
  const std::size_t n = grid_.n_points();
  if (n > kMaxTwoModePoints) {
    fail(ErrorKind::InvalidArgument, "two-mode grid limited to " +
                                         std::to_string(kMaxTwoModePoints) + " points per axis");
  }
  const GridWavefunction probe_state = gaussian_wavefunction(grid_, 0.0, probe.sigma_p2());

  const double c = std::cos(setup.phi());
  const double s = std::sin(setup.phi());
  const spectral::Interpolator interp(grid_);
  const auto sig = signal.amplitudes();
  const auto prb = probe_state.amplitudes();

  psi_.assign(n * n, Complex{0.0, 0.0});
  std::vector<double> w(n);
  auto eval = [&](std::span<const Complex> f, double y) {
    if (!interp.weights(y, w)) return Complex{0.0, 0.0};
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc += w[k] * f[k];
    return acc;
  };
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = grid_.node(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = grid_.node(j);
      const Complex a = eval(prb, u * s + v * c);
      if (a == Complex{0.0, 0.0}) continue;
      const Complex val = eval(sig, u * c - v * s) * a;
      psi_[i * n + j] = val;
      norm += std::norm(val);
    }
  }
  norm *= grid_.dx() * grid_.dx();
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "rotated two-mode state keeps norm " << norm << " on the grid";
    fail(ErrorKind::SupportViolation, msg.str());
  }
}

std::vector<Complex> BeamSplitterOutput::project(double X) const {
  const std::size_t n = grid_.n_points();
  std::vector<double> w(n);
  std::vector<Complex> slice(n, Complex{0.0, 0.0});
  if (!spectral::Interpolator(grid_).weights(X, w)) return slice;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex* row = psi_.data() + i * n;
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += w[j] * row[j];
    slice[i] = acc;
  }
  return slice;
}

double BeamSplitterOutput::homodyne_density(double X) const {
  double q = 0.0;
  for (const auto& a : project(X)) q += std::norm(a);
  return q * grid_.dx();
}

OracleResult BeamSplitterOutput::condition(double inferred_x) const {
  const double s = std::sin(setup_.phi());
  const double X = -inferred_x * s;
  GridWavefunction slice(grid_, project(X));
  // X = -x sin(phi): the Jacobian |dX/dx| = sin(phi) turns q(X) into p(x).
  const double p = s * slice.norm_squared();
  if (!(p > 1e-300)) {
    std::ostringstream msg;
    msg << "homodyne slice at X = " << X << " carries no probability";
    fail(ErrorKind::VanishingProbability, msg.str());
  }
  const HomodyneOutcome outcome = feedback_params(X, setup_);
  GridWavefunction state = displace(slice.normalized(), outcome.alpha_star);
  // The corrective squeeze S(r*), e^{r*} = cos(phi), shrinks the quadrature
  // spread by cos(phi); in squeeze()'s parametrization that is -r*.
  state = squeeze(state, -setup_.r_star());
  return OracleResult{p, state.normalized()};
}

OracleResult two_mode_oracle(const GridWavefunction& signal, const ProbeSpec& probe,
                             const SetupParams& setup, double inferred_x) {
  return BeamSplitterOutput(signal, probe, setup).condition(inferred_x);
}

}  // namespace qnd
