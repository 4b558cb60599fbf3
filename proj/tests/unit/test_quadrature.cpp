#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "logspiral/quadrature.hpp"

using namespace logspiral;

TEST(Quadrature, Polynomial) {
  auto f = [](double x) { return x * x * x - 2 * x + 1; };
  const auto r = quad::integrate(f, -1.0, 2.0, 1e-14, 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 3.75, 1e-13);
}

TEST(Quadrature, NearPole) {
  // Integral of 1/(x^2 + eps^2) over [-1, 1] is (2/eps) atan(1/eps).
  const double eps = 1e-4;
  auto f = [&](double x) { return 1.0 / (x * x + eps * eps); };
  const std::vector<double> bp{-1.0, 0.0, 1.0};
  const auto r = quad::integrate(f, std::span<const double>(bp), 1e-8, 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0 / eps * std::atan(1.0 / eps), 1e-7);
}

TEST(Quadrature, ComplexOscillatory) {
  auto f = [](double x) { return std::exp(std::complex<double>(0.0, 40.0 * x)); };
  const auto r = quad::integrate(f, 0.0, 1.0, 1e-13, 0.0);
  const std::complex<double> exact = (std::exp(std::complex<double>(0.0, 40.0)) - 1.0) / std::complex<double>(0.0, 40.0);
  EXPECT_LT(std::abs(r.value - exact), 1e-12);
}

TEST(Quadrature, BudgetReported) {
  auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x)); };
  const auto r = quad::integrate(f, -1.0, 1.0, 1e-15, 0.0, 10);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.splits, 10);
}

TEST(Quadrature, JumpAtBreakpoint) {
  auto f = [](double x) { return x < 0.3 ? 1.0 : -2.0; };
  const std::vector<double> bp{0.0, 0.3, 1.0};
  const auto r = quad::integrate(f, std::span<const double>(bp), 1e-14, 0.0);
  EXPECT_NEAR(r.value, 0.3 - 1.4, 1e-14);
  EXPECT_EQ(r.splits, 0);
}
