#include "qnd/tradeoff_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "qnd/errors.hpp"
#include "qnd/fidelity_metrics.hpp"

namespace qnd {

namespace {

constexpr std::size_t kUnimodalitySamples = 33;
constexpr double kFlatTolerance = 1e-12;
constexpr double kRelativeWidth = 1e-6;
constexpr double kBisectionWidth = 1e-10;

void require_bracket(Bracket b) {
  if (!(b.lo > 0.0 && b.lo < b.hi) || !std::isfinite(b.hi)) {
    std::ostringstream msg;
    msg << "bracket [" << b.lo << ", " << b.hi << "] must satisfy 0 < lo < hi";
    fail(ErrorKind::InvalidArgument, msg.str());
  }
}

}  // namespace

FidelityObjective FidelityObjective::closed_form() {
  return {[](double x) { return gaussian_F(TradeoffVariable(x)); },
          [](double x) { return gaussian_G(TradeoffVariable(x)); }};
}

FidelityObjective FidelityObjective::numeric(GridWavefunction signal, double sigma_s2) {
  if (!(sigma_s2 > 0.0)) fail(ErrorKind::InvalidArgument, "signal variance must be positive");
  auto psi = std::make_shared<const GridWavefunction>(std::move(signal));
  const double sigma_s = std::sqrt(sigma_s2);
  return {[psi, sigma_s](double x) { return grid_F(*psi, (x * sigma_s) * (x * sigma_s)); },
          [psi, sigma_s](double x) { return grid_G(*psi, (x * sigma_s) * (x * sigma_s)); }};
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (n < 2) return {lo};
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

TradeoffPoint optimize_sum(const FidelityObjective& objective, Bracket bracket) {
  require_bracket(bracket);
  auto sum = [&](double x) { return objective.F(x) + objective.G(x); };

  const auto xs = log_space(bracket.lo, bracket.hi, kUnimodalitySamples);
  std::vector<double> fs(xs.size());
  std::transform(xs.begin(), xs.end(), fs.begin(), sum);

  const auto [mn, mx] = std::minmax_element(fs.begin(), fs.end());
  if (*mx - *mn <= kFlatTolerance) {
    return objective.evaluate(0.5 * (bracket.lo + bracket.hi));
  }

  // Rising then falling (either part may be empty); a rise after a fall is a
  // second peak.
  bool falling = false;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    const double d = fs[i] - fs[i - 1];
    if (std::abs(d) <= kFlatTolerance) continue;
    if (d < 0.0) {
      falling = true;
    } else if (falling) {
      std::ostringstream msg;
      msg << "F + G rises again at x = " << xs[i] << " after falling near x = " << xs[i - 1];
      fail(ErrorKind::NotUnimodal, msg.str());
    }
  }

  const auto k = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
  double a = std::log(xs[k == 0 ? 0 : k - 1]);
  double b = std::log(xs[std::min(k + 1, xs.size() - 1)]);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = sum(std::exp(c));
  double fd = sum(std::exp(d));
  while (std::exp(b) - std::exp(a) > kRelativeWidth * std::exp(0.5 * (a + b))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = sum(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = sum(std::exp(d));
    }
  }
  return objective.evaluate(std::exp(0.5 * (a + b)));
}

TradeoffPoint equal_fidelity_point(const FidelityObjective& objective, Bracket bracket) {
  require_bracket(bracket);
  auto gap = [&](double x) { return objective.F(x) - objective.G(x); };
  double lo = bracket.lo;
  double hi = bracket.hi;
  double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (g_lo == 0.0) return objective.evaluate(lo);
  if (g_hi == 0.0) return objective.evaluate(hi);
  if (!(g_lo * g_hi < 0.0)) {
    std::ostringstream msg;
    msg << "F - G does not change sign on [" << lo << ", " << hi << "] (" << g_lo << ", " << g_hi
        << ")";
    fail(ErrorKind::NoSignChange, msg.str());
  }
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (g == 0.0) return objective.evaluate(mid);
    if ((g < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
    }
  }
  return objective.evaluate(0.5 * (lo + hi));
}

double PhysicalOperatingPoint::sigma_p_over_sigma_s() const {
  return std::sqrt(probe.sigma_p2() / sigma_s2);
}

double PhysicalOperatingPoint::recompute_x() const {
  return sigma_p_over_sigma_s() / std::tan(setup.phi());
}

PhysicalOperatingPoint physical_from_x(double x_target, double sigma_s2,
                                       const RealizationConstraint& constraint) {
  if (!(x_target > 0.0) || !std::isfinite(x_target)) {
    fail(ErrorKind::InvalidArgument, "target x must be finite and positive");
  }
  if (!(sigma_s2 > 0.0) || !std::isfinite(sigma_s2)) {
    fail(ErrorKind::InvalidArgument, "signal variance must be finite and positive");
  }
  const double sigma_s = std::sqrt(sigma_s2);

  PhysicalOperatingPoint point = std::visit(
      [&](const auto& c) -> PhysicalOperatingPoint {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, FixPhi>) {
          const SetupParams setup(c.phi);
          const double sigma_p = x_target * sigma_s * std::tan(c.phi);
          // sigma_p^2 = e^{+-2r} / 4
          const double ratio = 4.0 * sigma_p * sigma_p;
          const auto dir = ratio < 1.0 ? SqueezeDirection::Squeezed : SqueezeDirection::AntiSqueezed;
          const ProbeSpec probe(0.5 * std::abs(std::log(ratio)), dir);
          return {setup, probe, sigma_s2, x_target, probe.photon_number()};
        } else {
          const double sigma_p = std::sqrt(c.probe.sigma_p2());
          const SetupParams setup(std::atan(sigma_p / (sigma_s * x_target)));
          return {setup, c.probe, sigma_s2, x_target, c.probe.photon_number()};
        }
      },
      constraint);

  const double x_back = point.recompute_x();
  if (std::abs(x_back - x_target) > 1e-10 * std::max(1.0, x_target)) {
    std::ostringstream msg;
    msg << "realized x = " << x_back << " differs from target " << x_target;
    fail(ErrorKind::Numeric, msg.str());
  }
  return point;
}

double probe_energy(double r) {
  if (!(r >= 0.0)) fail(ErrorKind::InvalidArgument, "squeezing r must be non-negative");
  const double s = std::sinh(r);
  return s * s;
}

std::vector<TradeoffPoint> numeric_frontier(const GridWavefunction& signal,
                                            std::span<const double> x_values, double sigma_s2) {
  if (!(sigma_s2 > 0.0)) fail(ErrorKind::InvalidArgument, "signal variance must be positive");
  for (std::size_t i = 0; i < x_values.size(); ++i) {
    if (!(x_values[i] > 0.0) || (i > 0 && !(x_values[i] > x_values[i - 1]))) {
      fail(ErrorKind::InvalidArgument, "x values must be positive and strictly increasing");
    }
  }
  const double sigma_s = std::sqrt(sigma_s2);
  std::vector<TradeoffPoint> out;
  out.reserve(x_values.size());
  for (double x : x_values) {
    const double s2 = (x * sigma_s) * (x * sigma_s);
    out.push_back(TradeoffPoint::at(x, grid_F(signal, s2), grid_G(signal, s2)));
  }
  return out;
}

}  // namespace qnd
