#pragma once

// Test-only reference computations. Nothing here calls into the library's
// measurement or fidelity code; only raw samples and grid nodes cross over.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace qnd::oracle {

inline double gaussian(double d, double variance) {
  return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

inline double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

/// Fock wavefunction from the explicit Hermite polynomial,
/// psi_n(x) = (2/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt2 x) e^{-x^2}.
inline double fock(double x, unsigned n) {
  const double xi = std::numbers::sqrt2 * x;
  double h_prev = 1.0;
  double h = 2.0 * xi;
  if (n == 0) h = 1.0;
  for (unsigned k = 1; k < n; ++k) {
    const double next = 2.0 * xi * h - 2.0 * static_cast<double>(k) * h_prev;
    h_prev = h;
    h = next;
  }
  const double log_norm = -0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0));
  return std::pow(2.0 / std::numbers::pi, 0.25) * std::exp(log_norm) * h * std::exp(-x * x);
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = cdf(samples[i]);
    d = std::max({d, c - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - c});
  }
  return d;
}

inline std::vector<double> log_sweep(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

}  // namespace qnd::oracle
