#include "spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"

namespace qnd {
namespace {

std::vector<Complex> sample(const GridSpec& g, double mean, double var) {
  std::vector<Complex> out(g.n_points());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = oracle::gaussian(g.node(i) - mean, var);
  return out;
}

TEST(Translate, ZeroShiftIsIdentity) {
  const GridSpec g = make_grid(256, 8.0);
  const auto f = sample(g, 0.0, 0.3);
  const auto t = spectral::translate(f, g.dx(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(std::abs(t[i] - f[i]), 0.0, 1e-14);
}

TEST(Translate, MatchesShiftedGaussianOddAndEvenLengths) {
  for (std::size_t n : {255u, 256u}) {
    const GridSpec g = make_grid(n, 8.0);
    const auto shifted = spectral::translate(sample(g, 0.0, 0.3), g.dx(), 1.2345);
    const auto expected = sample(g, 1.2345, 0.3);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::abs(shifted[i] - expected[i]), 0.0, 1e-11);
  }
}

TEST(Interpolator, ReproducesSmoothFunctionOffGrid) {
  const GridSpec g = make_grid(200, 8.0);
  const auto f = sample(g, 0.4, 0.5);
  const spectral::Interpolator interp(g);
  for (double y : {-2.111, -0.0123, 0.5, 1.777, 3.3}) {
    EXPECT_NEAR(std::abs(interp.evaluate(f, y) - oracle::gaussian(y - 0.4, 0.5)), 0.0, 1e-12) << y;
  }
  // Exactly on a node the kernel is a Kronecker delta.
  EXPECT_NEAR(std::abs(interp.evaluate(f, g.node(37)) - f[37]), 0.0, 1e-13);
}

TEST(Interpolator, OutsideWindowIsZero) {
  const GridSpec g = make_grid(64, 4.0);
  const spectral::Interpolator interp(g);
  std::vector<double> w(g.n_points());
  EXPECT_FALSE(interp.weights(4.0 + g.dx(), w));
  EXPECT_TRUE(interp.weights(4.0 + 0.25 * g.dx(), w));
  const auto f = sample(g, 0.0, 0.25);
  EXPECT_EQ(interp.evaluate(f, -10.0), Complex(0.0, 0.0));
}

TEST(Interpolator, ResampleMatchesPointwise) {
  const GridSpec g = make_grid(128, 6.0);
  const auto f = sample(g, -0.3, 0.2);
  const spectral::Interpolator interp(g);
  const std::vector<double> pts{-1.0, -0.33, 0.0, 0.71};
  const auto r = interp.resample(f, pts);
  ASSERT_EQ(r.size(), pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    EXPECT_NEAR(std::abs(r[k] - interp.evaluate(f, pts[k])), 0.0, 1e-15);
  }
}

}  // namespace
}  // namespace qnd
