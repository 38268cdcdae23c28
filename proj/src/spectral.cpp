#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace qnd::spectral {
namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_1d(static_cast<int>(n), data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(static_cast<int>(n), data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftBuffer() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(data_);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  Complex* data() { return reinterpret_cast<Complex*>(data_); }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  fftw_complex* data_;
  fftw_plan forward_;
  fftw_plan backward_;
};

}  // namespace

std::vector<Complex> translate(std::span<const Complex> samples, double dx, double shift) {
  const std::size_t n = samples.size();
  FftBuffer buf(n);
  Complex* d = buf.data();
  std::copy(samples.begin(), samples.end(), d);
  buf.forward();

  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (std::size_t m = 0; m < n; ++m) {
    const auto signed_m = m <= n / 2 ? static_cast<double>(m)
                                     : static_cast<double>(m) - static_cast<double>(n);
    const double k = signed_m * dk;
    if (n % 2 == 0 && m == n / 2) {
      // Nyquist mode: keep the real-symmetric part so real inputs stay real.
      d[m] *= std::cos(k * shift);
    } else {
      d[m] *= std::polar(1.0, -k * shift);
    }
  }
  buf.backward();

  const double scale = 1.0 / static_cast<double>(n);
  std::vector<Complex> out(d, d + n);
  for (auto& v : out) v *= scale;
  return out;
}

Interpolator::Interpolator(const GridSpec& grid)
    : grid_(grid), cos_b_(grid.n_points()), sin_b_(grid.n_points()) {
  const double n = static_cast<double>(grid.n_points());
  for (std::size_t j = 0; j < grid.n_points(); ++j) {
    const double b = std::numbers::pi * static_cast<double>(j) / n;
    cos_b_[j] = std::cos(b);
    sin_b_[j] = std::sin(b);
  }
}

bool Interpolator::weights(double y, std::span<double> w) const {
  const std::size_t n = grid_.n_points();
  const double h = grid_.dx();
  const double y0 = -grid_.x_max();
  std::fill(w.begin(), w.end(), 0.0);

  const double u = (y - y0) / h;  // fractional node index
  if (u < -0.5 || u > static_cast<double>(n) - 0.5) return false;

  const double nearest = std::round(u);
  if (std::abs(u - nearest) < 1e-13) {
    w[static_cast<std::size_t>(nearest)] = 1.0;
    return true;
  }

  // K(t) = sin(pi t / h) / (N tan(pi t / L)), t = y - y_j, L = N h.
  const double nd = static_cast<double>(n);
  const double s = std::sin(std::numbers::pi * u);
  const double a = std::numbers::pi * u / nd;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double pref = s / nd;
  for (std::size_t j = 0; j < n; ++j) {
    const double num = ca * cos_b_[j] + sa * sin_b_[j];
    const double den = sa * cos_b_[j] - ca * sin_b_[j];
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    w[j] = sign * pref * num / den;
  }
  return true;
}

Complex Interpolator::evaluate(std::span<const Complex> samples, double y) const {
  std::vector<double> w(grid_.n_points());
  if (!weights(y, w)) return {0.0, 0.0};
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * samples[j];
  return acc;
}

std::vector<Complex> Interpolator::resample(std::span<const Complex> samples,
                                            std::span<const double> points) const {
  std::vector<Complex> out(points.size());
  std::vector<double> w(grid_.n_points());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!weights(points[i], w)) continue;
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * samples[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace qnd::spectral
