#include "qnd/tradeoff_optimizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qnd/fidelity_metrics.hpp"
#include "test_util.hpp"

namespace qnd {
namespace {

using testing_util::kind_of;
constexpr double kPi = std::numbers::pi;

TEST(OptimizeSum, ClosedFormOptimum) {
  const auto p = optimize_sum(FidelityObjective::closed_form());
  EXPECT_NEAR(p.x, 1.1958181752, 1e-5);
  EXPECT_NEAR(p.F, 0.86077297, 1e-8);
  EXPECT_NEAR(p.G, 0.90894942, 1e-8);
  EXPECT_NEAR(p.sum, p.F + p.G, 1e-15);
}

TEST(OptimizeSum, FlatObjectiveReturnsMidpoint) {
  const FidelityObjective flat{[](double) { return 0.5; }, [](double) { return 0.5; }};
  EXPECT_NEAR(optimize_sum(flat, {1.0, 3.0}).x, 2.0, 1e-12);
}

TEST(OptimizeSum, BoundaryMaximum) {
  const FidelityObjective rising{[](double x) { return x; }, [](double) { return 0.0; }};
  EXPECT_NEAR(optimize_sum(rising, {0.1, 10.0}).x, 10.0, 1e-4);
}

TEST(OptimizeSum, RejectsMultimodal) {
  const FidelityObjective wavy{[](double x) { return std::cos(4.0 * std::log(x)); },
                               [](double) { return 0.0; }};
  EXPECT_EQ(kind_of([&] { optimize_sum(wavy, {0.05, 20.0}); }), ErrorKind::NotUnimodal);
  EXPECT_EQ(kind_of([] { optimize_sum(FidelityObjective::closed_form(), {2.0, 1.0}); }),
            ErrorKind::InvalidArgument);
}

TEST(EqualFidelity, ClosedFormCrossing) {
  const auto p = equal_fidelity_point(FidelityObjective::closed_form(), kDefaultBracket);
  EXPECT_NEAR(p.x, 1.3301474934, 1e-8);
  EXPECT_NEAR(p.F, 0.88298754, 1e-8);
  EXPECT_NEAR(p.F, p.G, 1e-9);
}

TEST(EqualFidelity, NoCrossing) {
  EXPECT_EQ(kind_of([] { equal_fidelity_point(FidelityObjective::closed_form(), {2.0, 5.0}); }),
            ErrorKind::NoSignChange);
}

TEST(EqualFidelity, NumericObjectiveForVacuumMatchesClosedForm) {
  const auto vac = gaussian_wavefunction(default_grid(), 0.0, 0.25);
  const auto p = equal_fidelity_point(FidelityObjective::numeric(vac, 0.25), {0.5, 3.0});
  EXPECT_NEAR(p.x, 1.3301474934, 1e-6);
}

TEST(PhysicalFromX, FixedAngleAntiSqueezes) {
  const auto op = physical_from_x(1.2, 0.25, FixPhi{kPi / 4});
  EXPECT_EQ(op.probe.direction, SqueezeDirection::AntiSqueezed);
  EXPECT_NEAR(op.probe.r, 0.18232155679395462, 1e-14);
  EXPECT_NEAR(op.N_p, 0.033611111111111105, 1e-14);
  EXPECT_NEAR(op.sigma_p_over_sigma_s(), 1.2, 1e-12);
  EXPECT_NEAR(op.recompute_x(), 1.2, 1e-12);
}

TEST(PhysicalFromX, FixedAngleSqueezes) {
  const auto op = physical_from_x(0.5, 0.25, FixPhi{kPi / 4});
  EXPECT_EQ(op.probe.direction, SqueezeDirection::Squeezed);
  EXPECT_NEAR(op.probe.sigma_p2(), 0.0625, 1e-14);
  EXPECT_NEAR(op.recompute_x(), 0.5, 1e-12);
}

TEST(PhysicalFromX, FixedProbeChoosesAngle) {
  const auto op = physical_from_x(1.2, 0.25, FixProbe{ProbeSpec{}});
  EXPECT_NEAR(op.setup.phi(), std::atan(1.0 / 1.2), 1e-14);
  EXPECT_NEAR(op.N_p, 0.0, 1e-15);
  EXPECT_NEAR(op.recompute_x(), 1.2, 1e-12);
}

TEST(PhysicalFromX, RoundTripOverRange) {
  for (double x : log_space(0.05, 20.0, 25)) {
    for (double sigma_s2 : {0.1, 0.25, 0.75}) {
      EXPECT_NEAR(physical_from_x(x, sigma_s2, FixPhi{0.6}).recompute_x() / x, 1.0, 1e-10);
      EXPECT_NEAR(physical_from_x(x, sigma_s2, FixProbe{ProbeSpec(0.3, SqueezeDirection::Squeezed)})
                          .recompute_x() / x,
                  1.0, 1e-10);
    }
  }
}

TEST(ProbeEnergy, SinhSquared) {
  EXPECT_NEAR(probe_energy(1.0), 1.3810978455418155, 1e-14);
  EXPECT_DOUBLE_EQ(probe_energy(0.0), 0.0);
}

TEST(LogSpace, Endpoints) {
  const auto xs = log_space(0.2, 5.0, 20);
  ASSERT_EQ(xs.size(), 20u);
  EXPECT_DOUBLE_EQ(xs.front(), 0.2);
  EXPECT_NEAR(xs.back(), 5.0, 1e-14);
  for (std::size_t i = 1; i < xs.size(); ++i) EXPECT_NEAR(xs[i] / xs[i - 1], xs[1] / xs[0], 1e-12);
}

TEST(NumericFrontier, ShapeAndContracts) {
  const auto f1 = fock_wavefunction(default_grid(), 1);
  const std::vector<double> xs{0.5, 1.0, 2.0};
  const auto frontier = numeric_frontier(f1, xs, 0.75);
  ASSERT_EQ(frontier.size(), 3u);
  EXPECT_LT(frontier[0].F, frontier[2].F);
  EXPECT_GT(frontier[0].G, frontier[2].G);
  const std::vector<double> bad{1.0, 0.5};
  EXPECT_EQ(kind_of([&] { numeric_frontier(f1, bad, 0.75); }), ErrorKind::InvalidArgument);
}

}  // namespace
}  // namespace qnd
