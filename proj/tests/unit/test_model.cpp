#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "logspiral/errors.hpp"
#include "logspiral/model.hpp"
#include "logspiral/model_json.hpp"

using namespace logspiral;

namespace {

ErrorCode code_of(const FamilyParams& p) {
  try {
    SpiralFamily::validate(p);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Validate, MinimalFamily) {
  const SpiralFamily f = SpiralFamily::validate({1.0, 0.0, {1.0}, {0.0}});
  EXPECT_EQ(f.branches(), 1u);
  EXPECT_EQ(f.a(), 1.0);
}

TEST(Validate, Rejections) {
  EXPECT_EQ(code_of({1.0, 0.0, {1.0, 0.0}, {0.0, kPi}}), ErrorCode::ZeroCirculation);
  EXPECT_EQ(code_of({-1.0, 0.0, {1.0}, {0.0}}), ErrorCode::NonPositivePitch);
  EXPECT_EQ(code_of({0.0, 0.0, {1.0}, {0.0}}), ErrorCode::NonPositivePitch);
  EXPECT_EQ(code_of({1.0, 0.0, {1.0, 1.0}, {0.0}}), ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of({1.0, 0.0, {1.0, 1.0}, {1.0, 0.5}}), ErrorCode::UnsortedPhases);
  EXPECT_EQ(code_of({1.0, 0.0, {1.0, 1.0}, {1.0, 1.0}}), ErrorCode::UnsortedPhases);
  EXPECT_EQ(code_of({1.0, 0.0, {1.0}, {kTwoPi}}), ErrorCode::UnsortedPhases);
  EXPECT_EQ(code_of({1.0, 0.0, {1.0}, {-0.1}}), ErrorCode::UnsortedPhases);
}

TEST(GrowthConstant, UnitPitch) {
  const cplx A = growth_constant(1.0);
  EXPECT_NEAR(A.real(), -1.0, 1e-15);
  EXPECT_NEAR(A.imag(), -1.0, 1e-15);
}

TEST(GrowthConstant, LargePitch) {
  // (-2a/(1+a^2))(1+ai) at a = 1e6, evaluated exactly by hand.
  const cplx A = growth_constant(1e6);
  EXPECT_NEAR(A.real(), -1.999999999998e-6, 1e-12);
  EXPECT_NEAR(A.imag(), -1.999999999998, 1e-12);
}

TEST(GrowthConstant, RejectsNonPositive) {
  EXPECT_THROW(growth_constant(0.0), Error);
  EXPECT_THROW(growth_constant_expanded(-2.0), Error);
}

TEST(GrowthConstant, FormsAgreeOverTwelveDecades) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(std::log(1e-6), std::log(1e6));
  for (int i = 0; i < 10000; ++i) {
    const double a = std::exp(u(rng));
    const cplx A = growth_constant(a);
    const cplx B = growth_constant_expanded(a);
    ASSERT_LT(std::abs(A - B), 1e-14 * std::abs(A)) << "a = " << a;
    ASSERT_LT(A.real(), 0.0);
  }
}

TEST(GrowthConstant, ShiftedRepresentative) {
  for (double a : {1e-3, 0.5, 1.0, 7.0, 1e4}) {
    const cplx shifted = pi_growth_shifted(a);
    const cplx direct = kPi * growth_constant(a) + cplx(0.0, kTwoPi);
    EXPECT_LT(std::abs(shifted - direct), 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST(Expm1, SmallAndLarge) {
  const cplx z(1e-10, -2e-10);
  EXPECT_LT(std::abs(logspiral::expm1(z) - z) / std::abs(z), 1e-9);
  const cplx w(0.7, 2.1);
  EXPECT_LT(std::abs(logspiral::expm1(w) - (std::exp(w) - 1.0)), 1e-15);
}

TEST(Json, RoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t M = 1 + i % 5;
    FamilyParams p;
    p.a = 0.05 + 5.0 * u(rng);
    p.mu = -2.0 + 4.0 * u(rng);
    for (std::size_t k = 0; k < M; ++k) {
      p.g.push_back((u(rng) < 0.5 ? -1.0 : 1.0) * (0.1 + u(rng)));
      p.theta.push_back(kTwoPi * (k + 0.9 * u(rng)) / M);
    }
    const SpiralFamily f = SpiralFamily::validate(p);
    const SpiralFamily back = family_from_json(nlohmann::json::parse(dump_family(f)));
    ASSERT_EQ(f, back);
  }
}

TEST(Json, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"a":1,"mu":0,"g":[1],"theta":[0],"x":1})")), Error);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"a":"1","mu":0,"g":[1],"theta":[0]})")), Error);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"mu":0,"g":[1],"theta":[0]})")), Error);
}

TEST(Json, LoadFailuresAreInvalidArgument) {
  try {
    load_family("/nonexistent/path.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Alexander, FamilyShape) {
  const SpiralFamily f = alexander_family(1.0, 4, 2.0, 0.1);
  ASSERT_EQ(f.branches(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(f.g(k), 2.0);
    EXPECT_NEAR(f.theta(k), kTwoPi * k / 4.0, 1e-15);
  }
}
