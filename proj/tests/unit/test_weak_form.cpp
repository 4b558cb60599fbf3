#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "logspiral/constraint.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/oracle.hpp"

using namespace logspiral;

namespace {

double worst(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST(WeakForm, SolvedVersusPerturbed) {
  for (std::size_t M : {1u, 3u}) {
    const SpiralFamily solved = alexander_solve(1.0, M).family;
    const SpiralFamily off = solved.with_mu(solved.mu() + 0.2);
    const auto fields = sheet_test_fields(solved, 3);
    const double good = worst(weak_form_residual(solved, fields));
    const double bad = worst(weak_form_residual(off, fields));
    EXPECT_LT(good, 1e-3) << "M=" << M;
    EXPECT_GE(bad, 10.0 * good) << "M=" << M;
  }
}

TEST(WeakForm, InteriorFieldVanishes) {
  for (double mu : {-0.5, 0.0, 0.7}) {
    const SpiralFamily f = SpiralFamily::validate({0.8, mu, {1.0, -0.3}, {0.0, 2.5}});
    EXPECT_LT(weak_form_ratio(f, interior_test_field(f), interior_quad_spec()), 1e-8) << mu;
  }
}

TEST(WeakForm, SupportAvoidsOrigin) {
  const SpiralFamily f = alexander_solve(1.0, 1).family;
  for (const WeakTestField& t : sheet_test_fields(f, 6)) EXPECT_GE(std::abs(t.center) - t.radius, 0.25 * t.radius);
  const WeakTestField interior = interior_test_field(f);
  EXPECT_GE(std::abs(interior.center) - interior.radius, 0.25 * interior.radius);
}

TEST(WeakForm, Budget) {
  const SpiralFamily f = alexander_solve(1.0, 1).family;
  WeakQuadSpec spec;
  spec.max_evaluations = 1000;
  try {
    weak_form_residual(f, 1, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureBudgetExceeded);
  }
}

TEST(WeakForm, RejectsSupportThroughOrigin) {
  const SpiralFamily f = alexander_solve(1.0, 1).family;
  WeakTestField t;
  t.center = {0.1, 0.0};
  t.radius = 0.5;
  EXPECT_THROW(weak_form_ratio(f, t), Error);
}
