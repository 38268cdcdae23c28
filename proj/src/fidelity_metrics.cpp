#include "qnd/fidelity_metrics.hpp"

#include <cmath>
#include <sstream>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

void require_normalized(const Distribution& d, const char* which) {
  const double t = d.total();
  if (std::abs(t - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << which << " distribution integrates to " << t;
    fail(ErrorKind::InvalidArgument, msg.str());
  }
}

}  // namespace

TradeoffVariable::TradeoffVariable(double x) : x_(x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    fail(ErrorKind::InvalidArgument, "trade-off variable must be finite and positive");
  }
}

TradeoffVariable TradeoffVariable::from_physical(double sigma_p, double sigma_s, double phi) {
  return TradeoffVariable(sigma_p / (sigma_s * std::tan(phi)));
}

double statistical_fidelity(const Distribution& p, const Distribution& q) {
  if (!(p.grid() == q.grid())) {
    fail(ErrorKind::GridMismatch, "distributions are sampled on different grids");
  }
  require_normalized(p, "first");
  require_normalized(q, "second");
  const auto& a = p.densities();
  const auto& b = q.densities();
  double bc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) bc += std::sqrt(a[i] * b[i]);
  bc *= p.grid().dx();
  return bc * bc;
}

double gaussian_F(TradeoffVariable x) {
  const double v = x.value();
  return std::sqrt(2.0) * v / std::sqrt(1.0 + 2.0 * v * v);
}

double gaussian_G(TradeoffVariable x) {
  const double v = x.value();
  return 2.0 * std::sqrt(1.0 + v * v) / (2.0 + v * v);
}

double grid_F(const GridWavefunction& signal, double sigma_eff2) {
  return pure_mixed_fidelity(signal, nonselective_output(signal, sigma_eff2));
}

double grid_G(const GridWavefunction& signal, double sigma_eff2) {
  if (std::sqrt(sigma_eff2) < signal.grid().dx()) return 1.0;
  const Distribution p = inferred_distribution(signal, sigma_eff2);
  const Distribution q = Distribution::quadrature_of(signal, p.grid());
  return statistical_fidelity(p, q);
}

}  // namespace qnd
