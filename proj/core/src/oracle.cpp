#include "logspiral/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logspiral/constraint.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/field.hpp"
#include "logspiral/geometry.hpp"
#include "logspiral/quadrature.hpp"

namespace logspiral {

namespace {

constexpr cplx kI{0.0, 1.0};

double circulation_scale(const SpiralFamily& family) {
  double s = 0.0;
  for (double g : family.g()) s += std::abs(g);
  return s;
}

}  // namespace

cplx biot_savart_integrand(const SpiralFamily& family, PolarPoint zeta, double sigma,
                           IntegrandForm form) {
  const double a = family.a();
  const double r = zeta.r;
  const cplx ai(a, 1.0);
  cplx f{0.0, 0.0};
  for (std::size_t k = 0; k < family.branches(); ++k) {
    const double delta = family.theta(k) - zeta.theta;
    const cplx denom = r - std::exp(ai * sigma + kI * delta);
    const cplx numer = form == IntegrandForm::Direct
                           ? cplx(std::exp(2.0 * a * sigma), 0.0)
                           : r * r * std::polar(1.0, -2.0 * sigma - 2.0 * delta);
    f += family.g(k) * numer / denom;
  }
  return f;
}

cplx integrand_pole(const SpiralFamily& family, PolarPoint zeta, std::size_t k, std::int64_t j) {
  const double a = family.a();
  const double delta = family.theta(k) - zeta.theta;
  const double n = kTwoPi * static_cast<double>(j) + delta;
  return (cplx(a, -1.0) * std::log(zeta.r) - n * cplx(1.0, a)) / (1.0 + a * a);
}

QuadratureResult biot_savart_integral(const SpiralFamily& family, PolarPoint zeta,
                                      const BiotSavartOptions& opts) {
  const Compatibility compat = compatibility_check(family);
  if (!compat.holds)
    throw Error(ErrorCode::CompatibilityViolated,
                "Biot-Savart integral does not converge without the compatibility conditions");
  if (on_sheet(family, zeta)) throw Error(ErrorCode::OnSheet, "pole on the real sigma axis");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const double a = family.a();
  const double r = zeta.r;
  const double gsum = circulation_scale(family);
  const double tol_int = kTwoPi * opts.tol;

  // Left tail: |denominator| >= r/2 once e^{a sigma} <= r/2, so the tail of
  // the Direct form is below gsum e^{2a sigma_-} / (a r).
  const double sigma_minus =
      std::min(std::log(0.5 * r) / a, std::log(tol_int * a * r / (10.0 * gsum)) / (2.0 * a));
  // Right tail: |denominator| >= e^{a sigma}/2 once e^{a sigma} >= 2r, so the
  // tail of the Compatible form is below 2 gsum r^2 e^{-a sigma_+} / a.
  const double sigma_plus =
      std::max(std::log(2.0 * r) / a, std::log(20.0 * gsum * r * r / (a * tol_int)) / a);
  const double split = std::clamp(opts.sigma_split, sigma_minus, sigma_plus);

  std::vector<double> bp{sigma_minus, split, sigma_plus};
  // Seed subdivisions at the real parts of the poles; the integrand peaks there.
  const double log_r = std::log(r);
  constexpr std::size_t kMaxSeeds = 5000;
  for (std::size_t k = 0; k < family.branches() && bp.size() < kMaxSeeds; ++k) {
    const double delta = family.theta(k) - zeta.theta;
    const double span = (1.0 + a * a) / kTwoPi;
    const auto jlo = static_cast<std::int64_t>(std::floor((a * log_r - delta) / kTwoPi - span * sigma_plus));
    const auto jhi = static_cast<std::int64_t>(std::ceil((a * log_r - delta) / kTwoPi - span * sigma_minus));
    for (std::int64_t j = jlo; j <= jhi && bp.size() < kMaxSeeds; ++j) {
      const double re = integrand_pole(family, zeta, k, j).real();
      if (re > sigma_minus && re < sigma_plus) bp.push_back(re);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  auto f = [&](double sigma) {
    return biot_savart_integrand(family, zeta, sigma,
                                 sigma < split ? IntegrandForm::Direct : IntegrandForm::Compatible);
  };
  const auto res = quad::integrate(f, std::span<const double>(bp), 0.8 * tol_int, 0.0, opts.max_splits);

  QuadratureResult out;
  out.value = res.value / (kTwoPi * kI);
  out.error_estimate = (res.error + 0.2 * tol_int) / kTwoPi;
  out.splits = res.splits;
  out.tail_cutoffs = {sigma_minus, sigma_plus};
  if (!res.converged)
    throw Error(ErrorCode::ToleranceNotMet,
                "quadrature error estimate " + std::to_string(out.error_estimate) + " above tol");
  return out;
}

cplx biot_savart_closed_form(const SpiralFamily& family, PolarPoint zeta) {
  const double a = family.a();
  const cplx A = family.A();
  const double r = zeta.r;
  const cplx ai(a, 1.0);
  const WindingVector J = winding_vector(family, zeta);
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < family.branches(); ++k) {
    const double delta = family.theta(k) - zeta.theta;
    const cplx e = std::exp((2.0 * a / ai) * std::log(r) + A * delta +
                            2.0 * static_cast<double>(J[k]) * family.pi_A());
    sum += family.g(k) / (r * ai) * e;
  }
  return sum / family.one_minus_exp_2piA();
}

cplx residue_series(const SpiralFamily& family, PolarPoint zeta) {
  const double a = family.a();
  const cplx ai(a, 1.0);
  const cplx a_minus_i(a, -1.0);
  const WindingVector J = winding_vector(family, zeta);
  cplx total{0.0, 0.0};
  for (std::size_t k = 0; k < family.branches(); ++k) {
    const double delta = family.theta(k) - zeta.theta;
    cplx partial{0.0, 0.0};
    for (std::int64_t l = J[k]; l < J[k] + 1'000'000; ++l) {
      const cplx sigma = integrand_pole(family, zeta, k, l);
      // -res(f_k, sigma_l) = g_k e^{2a sigma} / ((a+i) e^{(a+i) sigma + i Delta_k})
      const cplx term = std::exp(a_minus_i * sigma - kI * delta);
      partial += term;
      if (std::abs(term) <= 1e-18 * std::abs(partial)) break;
    }
    total += family.g(k) / ai * partial;
  }
  return total;
}

BiotSavartVelocity biot_savart_quadrature(const SpiralFamily& family, cplx z, double t, double tol,
                                          double sigma_split) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t = " + std::to_string(t));
  const double a = family.a();
  const double mu = family.mu();
  const double vscale = std::pow(t, mu - 1.0);
  const PolarPoint zeta = PolarPoint::from_complex(z / std::pow(t, mu));
  BiotSavartOptions opts;
  opts.tol = tol / (2.0 * a * vscale);
  opts.sigma_split = sigma_split;
  BiotSavartVelocity out;
  out.integral = biot_savart_integral(family, zeta, opts);
  out.velocity = vscale * std::polar(1.0, zeta.theta) * std::conj(2.0 * a * out.integral.value);
  return out;
}

double interior_euler_residual(const SpiralFamily& family, cplx z, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const PolarPoint p = PolarPoint::from_complex(z);
  if (!(p.r > 0.0)) throw Error(ErrorCode::InvalidArgument, "z must be nonzero");
  for (std::size_t k = 0; k < family.branches(); ++k)
    if (distance_to_branch(family, p, k) <= 4.0 * h)
      throw Error(ErrorCode::StencilCrossesSheet, "finite-difference stencil would cross Sigma");

  auto eval = [&](cplx zz) { return profile_unchecked(family, PolarPoint::from_complex(zz)); };
  const ProfileValue c = eval(z);
  const ProfileValue px = eval(z + h);
  const ProfileValue mx = eval(z - h);
  const ProfileValue py = eval(z + cplx(0.0, h));
  const ProfileValue my = eval(z - cplx(0.0, h));

  const cplx w_x = (px.w - mx.w) / (2.0 * h);
  const cplx w_y = (py.w - my.w) / (2.0 * h);
  const cplx grad_q((px.q - mx.q) / (2.0 * h), (py.q - my.q) / (2.0 * h));
  const double mu = family.mu();
  const cplx w = c.w;
  const cplx R = grad_q + (mu - 1.0) * w - mu * (z.real() * w_x + z.imag() * w_y) +
                 (w.real() * w_x + w.imag() * w_y);
  return std::max(std::abs(R.real()), std::abs(R.imag()));
}

MatchingResiduals matching_residuals(const SpiralFamily& family,
                                     std::span<const MatchingSample> samples) {
  MatchingResiduals out;
  out.velocity.reserve(samples.size());
  out.pressure.reserve(samples.size());
  const double a = family.a();
  const double mu = family.mu();
  for (const MatchingSample& s : samples) {
    const SheetPoint sp = sheet_point(family, s.branch, s.theta, 1.0);
    const SheetTrace tr = sheet_trace(family, s.branch, s.theta, 1.0);
    const double growth = std::exp(2.0 * a * (s.theta - family.theta(s.branch)));
    const double normal_flux = std::real(kI * sp.dZ * std::conj(tr.average - mu * sp.Z));
    out.velocity.push_back(normal_flux / growth);
    out.pressure.push_back((tr.q_right - tr.q_left) / (family.g(s.branch) * growth));
  }
  return out;
}

}  // namespace logspiral
