#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "logspiral/errors.hpp"
#include "logspiral/geometry.hpp"
#include "reference.hpp"

using namespace logspiral;

namespace {

SpiralFamily prandtl() { return SpiralFamily::validate({1.0, 0.0, {1.0}, {0.0}}); }

SpiralFamily three_branch(double a) {
  return SpiralFamily::validate({a, 0.3, {1.0, -0.5, 2.0}, {0.2, 1.9, 4.4}});
}

}  // namespace

TEST(Winding, Examples) {
  const SpiralFamily f = prandtl();
  EXPECT_EQ(winding_number(f, {1.0, 0.0}, 0), 1);
  EXPECT_EQ(winding_number(f, {std::exp(kPi), 0.0}, 0), 0);
}

TEST(Winding, MatchesBisectionOracleAndBounds) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double a : {0.05, 0.7, 1.0, 13.0}) {
    const SpiralFamily f = three_branch(a);
    for (int i = 0; i < 20000; ++i) {
      const PolarPoint p{std::exp(-14.0 + 28.0 * u(rng)), -30.0 + 60.0 * u(rng)};
      const std::size_t k = i % 3;
      const std::int64_t J = winding_number(f, p, k);
      ASSERT_EQ(J, ref::winding(a, f.theta(k), p.r, p.theta));
      const double lower = -(std::log(p.r) / a + f.theta(k) - p.theta) / kTwoPi;
      ASSERT_GT(static_cast<double>(J), lower - 1e-9);
      ASSERT_LE(static_cast<double>(J), lower + 1.0 + 1e-9);
    }
  }
}

TEST(Winding, AngleShiftAddsTurns) {
  const SpiralFamily f = three_branch(0.8);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const PolarPoint p{std::exp(-5.0 + 10.0 * u(rng)), -10.0 + 20.0 * u(rng)};
    const int l = static_cast<int>(u(rng) * 7) - 3;
    for (std::size_t k = 0; k < 3; ++k)
      ASSERT_EQ(winding_number(f, {p.r, p.theta + kTwoPi * l}, k), winding_number(f, p, k) + l);
  }
}

TEST(Winding, ConstantOnRadialSectors) {
  const SpiralFamily f = three_branch(0.6);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::int64_t j = -2; j <= 2; ++j) {
      const double theta = 0.4 + static_cast<double>(j);
      const double a = f.a();
      const double log_hi = a * (theta - kTwoPi * (j - 1) - f.theta(k));
      const double log_lo = a * (theta - kTwoPi * j - f.theta(k));
      for (int i = 0; i < 1000; ++i) {
        // Stay a hair inside the half-open interval to avoid rounding at its ends.
        const double s = 1e-9 + (1.0 - 2e-9) * u(rng);
        const double r = std::exp(log_lo + s * (log_hi - log_lo));
        ASSERT_EQ(winding_number(f, {r, theta}, k), j);
      }
    }
}

TEST(Winding, RadialCrossingIncrements) {
  const SpiralFamily f = three_branch(1.2);
  for (std::size_t k = 0; k < 3; ++k)
    for (double theta : {-3.0, 0.0, 2.5, 9.0}) {
      const double r0 = std::exp(f.a() * (theta - f.theta(k)));
      const std::int64_t outside = winding_number(f, {r0 * (1 + 1e-9), theta}, k);
      const std::int64_t inside = winding_number(f, {r0 * (1 - 1e-9), theta}, k);
      EXPECT_EQ(inside, outside + 1);
    }
}

TEST(WindingLimits, Cases) {
  const SpiralFamily f = three_branch(1.0);
  const WindingLimits same = winding_limits(f, 1, 0.3, 1);
  EXPECT_EQ(same.right, 0);
  EXPECT_EQ(same.left, 1);
  const WindingLimits below = winding_limits(f, 1, 0.3, 0);
  EXPECT_EQ(below.right, 1);
  EXPECT_EQ(below.left, 1);
  const WindingLimits above = winding_limits(f, 1, 0.3, 2);
  EXPECT_EQ(above.right, 0);
  EXPECT_EQ(above.left, 0);
  EXPECT_THROW(winding_limits(f, 3, 0.0, 0), Error);
}

TEST(WindingLimits, AgreeWithNearbyPoints) {
  const SpiralFamily f = three_branch(0.9);
  for (std::size_t m = 0; m < 3; ++m)
    for (double dth : {-7.0, -1.0, 0.0, 0.5, 4.0}) {
      const double theta = f.theta(m) + dth;
      const SheetPoint sp = sheet_point(f, m, theta, 1.0);
      const double d = 1e-9 * std::abs(sp.Z);
      const cplx zl = sp.Z + d * sp.normal;
      const cplx zr = sp.Z - d * sp.normal;
      EXPECT_EQ(winding_vector(f, {std::abs(zl), theta + std::arg(zl / sp.Z)}), winding_left(f, m));
      EXPECT_EQ(winding_vector(f, {std::abs(zr), theta + std::arg(zr / sp.Z)}), winding_right(f, m));
    }
}

TEST(SheetPoint, Examples) {
  const SpiralFamily f = prandtl();
  const SheetPoint sp = sheet_point(f, 0, 0.0, 1.0);
  EXPECT_NEAR(std::abs(sp.Z - cplx(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sp.dZ - cplx(1.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(sp.gamma, std::sqrt(2.0), 1e-15);
  EXPECT_THROW(sheet_point(f, 0, 0.0, 0.0), Error);
}

TEST(SheetPoint, Invariants) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = 0.1 + 3.0 * u(rng);
    const double mu = -1.0 + 2.0 * u(rng);
    const SpiralFamily f = SpiralFamily::validate({a, mu, {0.7, -1.3}, {0.5, 3.0}});
    const std::size_t m = i % 2;
    const double theta = -6.0 + 12.0 * u(rng);
    const double t = 0.1 + 3.0 * u(rng);
    const SheetPoint sp = sheet_point(f, m, theta, t);
    const cplx Z = std::pow(t, mu) * std::exp(a * (theta - f.theta(m))) * std::polar(1.0, theta);
    ASSERT_LT(std::abs(sp.Z - Z), 1e-13 * std::abs(Z));
    ASSERT_LT(std::abs(sp.dZ / sp.Z - cplx(a, 1.0)), 1e-14);
    ASSERT_LT(std::abs(sp.normal - cplx(0.0, 1.0) * sp.tangent), 1e-15);
    const double Gamma = f.g(m) * std::pow(t, 2 * mu - 1) * std::exp(2 * a * (theta - f.theta(m)));
    ASSERT_LT(std::abs(sp.Gamma - Gamma), 1e-13 * std::abs(Gamma));
    // d(Gamma)/d(theta) = 2a Gamma, divided by |dZ|.
    ASSERT_LT(std::abs(sp.gamma - 2 * a * Gamma / std::abs(sp.dZ)), 1e-12 * std::abs(sp.gamma));
    const double closed = 2 * a * f.g(m) * std::pow(t, mu - 1) * std::exp(a * (theta - f.theta(m))) /
                          std::sqrt(1 + a * a);
    ASSERT_LT(std::abs(sp.gamma - closed), 1e-12 * std::abs(closed));
  }
}

TEST(Locate, SingleBranchRegion) {
  const SpiralFamily f = prandtl();
  for (double th : {0.1, 1.0, 2.0, -3.0})
    EXPECT_EQ(locate_point(f, {0.5, th}, 1.0).region, 0u);
}

TEST(Locate, RegionsBetweenBranches) {
  const SpiralFamily f = three_branch(1.0);
  // At r = 1 the phase equals theta; region m covers [theta_m, theta_{m+1}).
  EXPECT_EQ(locate_point(f, {1.0, 1.0}, 1.0).region, 0u);
  EXPECT_EQ(locate_point(f, {1.0, 3.0}, 1.0).region, 1u);
  EXPECT_EQ(locate_point(f, {1.0, 5.0}, 1.0).region, 2u);
  EXPECT_EQ(locate_point(f, {1.0, 0.1}, 1.0).region, 2u);
}

TEST(Locate, DistanceMatchesDenseSearch) {
  const SpiralFamily f = prandtl();
  const cplx z = std::polar(0.5, 0.1);
  auto dist = [&](double s) { return std::abs(z - std::exp(cplx(1.0, 1.0) * s)); };
  double best = 1e300, best_s = 0.0;
  constexpr int n = 1000000;
  for (int i = 0; i <= n; ++i) {
    const double s = -30.0 + 35.0 * i / n;
    if (dist(s) < best) best = dist(s), best_s = s;
  }
  double lo = best_s - 35.0 / n, hi = best_s + 35.0 / n;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 100; ++it) {
    const double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    (dist(c) < dist(d) ? hi : lo) = dist(c) < dist(d) ? d : c;
  }
  const double oracle = dist(0.5 * (lo + hi));
  EXPECT_NEAR(locate_point(f, PolarPoint::from_complex(z), 1.0).distance, oracle, 1e-12);
  EXPECT_NEAR(distance_to_branch(f, PolarPoint::from_complex(z), 0), oracle, 1e-12);
}

TEST(Locate, RescalesWithTime) {
  const SpiralFamily f = SpiralFamily::validate({1.0, 0.5, {1.0}, {0.0}});
  const PolarPoint zeta{0.5, 0.1};
  const double t = 4.0;
  const Location at1 = locate_point(f, zeta, 1.0);
  const Location at4 = locate_point(f, {zeta.r * std::pow(t, 0.5), zeta.theta}, t);
  EXPECT_EQ(at1.region, at4.region);
  EXPECT_EQ(at1.winding, at4.winding);
  EXPECT_NEAR(at4.distance, 2.0 * at1.distance, 1e-12);
}

TEST(Locate, OnSheetThrows) {
  const SpiralFamily f = prandtl();
  const SheetPoint sp = sheet_point(f, 0, 0.3, 1.0);
  try {
    locate_point(f, PolarPoint::from_complex(sp.Z), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OnSheet);
  }
  EXPECT_TRUE(on_sheet(f, PolarPoint::from_complex(sp.Z)));
  EXPECT_FALSE(on_sheet(f, {0.5, 0.1}));
  EXPECT_THROW(locate_point(f, {0.5, 0.1}, -1.0), Error);
}

TEST(Phase, ConstantAlongBranches) {
  const SpiralFamily f = three_branch(0.7);
  for (std::size_t k = 0; k < 3; ++k)
    for (double th : {-4.0, 0.0, 3.0}) {
      const double r = std::exp(f.a() * (th - f.theta(k)));
      EXPECT_NEAR(spiral_phase(f, {r, th}), f.theta(k), 1e-12);
    }
}
