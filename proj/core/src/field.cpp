#include "logspiral/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "logspiral/errors.hpp"
#include "logspiral/quadrature.hpp"

namespace logspiral {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_off_sheet(const SpiralFamily& family, PolarPoint p) {
  if (!(p.r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  if (on_sheet(family, p)) throw Error(ErrorCode::OnSheet, "point lies on Sigma");
}

double bernoulli(const SpiralFamily& family, PolarPoint p, cplx w, cplx Phi) {
  const double mu = family.mu();
  const cplx z = p.to_complex();
  return -std::real((2.0 * mu - 1.0) * Phi - mu * z * std::conj(w)) - 0.5 * std::norm(w);
}

// e^{2 pi J A} for integer J, using e^{2 pi A} = e^{2 pi A + 4 pi i}.
cplx exp_2piA_power(const SpiralFamily& family, std::int64_t J) {
  return std::exp(2.0 * static_cast<double>(J) * family.pi_A());
}

}  // namespace

ProfileValue profile_with_winding(const SpiralFamily& family, PolarPoint p,
                                  std::span<const std::int64_t> winding) {
  const cplx A = family.A();
  const cplx iA = kI * A;
  const double log_r = std::log(p.r);
  const cplx inv_denominator = 1.0 / family.one_minus_exp_2piA();

  // Term k of Phi is g_k r^{iA} e^{A(theta_k - theta)} e^{2 pi J_k A} / (1 - e^{2 pi A}).
  // The exponents are combined so that the r-growth and the winding decay
  // cancel inside a single exponential.
  cplx Phi{0.0, 0.0};
  for (std::size_t k = 0; k < family.branches(); ++k) {
    const double shift = family.theta(k) - p.theta + kTwoPi * static_cast<double>(winding[k]);
    Phi += family.g(k) * std::exp(A * shift + iA * log_r);
  }
  Phi *= inv_denominator;

  ProfileValue out;
  out.Phi = Phi;
  // conj(w) = iA Phi / z.
  out.w = std::conj(iA * Phi) * cplx(std::cos(p.theta), std::sin(p.theta)) / p.r;
  out.q = bernoulli(family, p, out.w, out.Phi);
  return out;
}

ProfileValue profile_unchecked(const SpiralFamily& family, PolarPoint p) {
  const WindingVector J = winding_vector(family, p);
  return profile_with_winding(family, p, J);
}

cplx profile_w(const SpiralFamily& family, PolarPoint p) {
  require_off_sheet(family, p);
  const WindingVector J = winding_vector(family, p);
  const double a = family.a();
  const double log_r = std::log(p.r);
  const cplx A = family.A();
  const cplx a_plus_i(a, 1.0);
  const cplx a_minus_i(a, -1.0);
  const cplx inv_denominator = 1.0 / family.one_minus_exp_2piA();

  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < family.branches(); ++k) {
    const cplx bracket = std::exp((2.0 * a / a_plus_i) * log_r + A * (family.theta(k) - p.theta)) *
                         exp_2piA_power(family, J[k]) * inv_denominator;
    sum += (2.0 * a * family.g(k) / (p.r * a_minus_i)) * std::conj(bracket);
  }
  return cplx(std::cos(p.theta), std::sin(p.theta)) * sum;
}

cplx potential_amplitude(const SpiralFamily& family, PolarPoint p) {
  const WindingVector J = winding_vector(family, p);
  const cplx A = family.A();
  cplx D{0.0, 0.0};
  for (std::size_t k = 0; k < family.branches(); ++k)
    D += family.g(k) * std::exp(A * family.theta(k)) * exp_2piA_power(family, J[k]);
  return D / family.one_minus_exp_2piA();
}

cplx profile_w_simple(const SpiralFamily& family, PolarPoint p) {
  require_off_sheet(family, p);
  const cplx iA = kI * family.A();
  const cplx D = potential_amplitude(family, p);
  // z^{iA - 1} on the branch selected by the unreduced angle.
  const cplx log_z(std::log(p.r), p.theta);
  const cplx w_conj = D * iA * std::exp((iA - 1.0) * log_z);
  return std::conj(w_conj);
}

cplx potential_Phi(const SpiralFamily& family, PolarPoint p) {
  require_off_sheet(family, p);
  return profile_unchecked(family, p).Phi;
}

double pressure_q(const SpiralFamily& family, PolarPoint p) {
  require_off_sheet(family, p);
  return profile_unchecked(family, p).q;
}

FieldSample sample_profile(const SpiralFamily& family, PolarPoint p) {
  require_off_sheet(family, p);
  FieldSample s;
  s.winding = winding_vector(family, p);
  const ProfileValue v = profile_with_winding(family, p, s.winding);
  s.w = v.w;
  s.Phi = v.Phi;
  s.q = v.q;
  s.region = region_index(family, p);
  return s;
}

SpacetimeSample spacetime_fields(const SpiralFamily& family, cplx z, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t = " + std::to_string(t));
  const double mu = family.mu();
  const double scale = std::pow(t, mu);
  const PolarPoint zeta = PolarPoint::from_complex(z / scale);
  require_off_sheet(family, zeta);
  const ProfileValue v = profile_unchecked(family, zeta);
  return {std::pow(t, mu - 1.0) * v.w, std::pow(t, 2.0 * mu - 2.0) * v.q};
}

SheetTrace sheet_trace(const SpiralFamily& family, std::size_t m, double theta, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t = " + std::to_string(t));
  const SheetPoint sp = sheet_point(family, m, theta, 1.0);
  const PolarPoint zeta{std::abs(sp.Z), theta};
  const WindingVector right = winding_right(family, m);
  const WindingVector left = winding_left(family, m);
  const ProfileValue vr = profile_with_winding(family, zeta, right);
  const ProfileValue vl = profile_with_winding(family, zeta, left);

  const double mu = family.mu();
  const double vscale = std::pow(t, mu - 1.0);
  const double pscale = std::pow(t, 2.0 * mu - 2.0);
  SheetTrace tr;
  tr.w_right = vscale * vr.w;
  tr.w_left = vscale * vl.w;
  tr.jump = tr.w_right - tr.w_left;
  tr.average = 0.5 * (tr.w_right + tr.w_left);
  tr.q_right = pscale * vr.q;
  tr.q_left = pscale * vl.q;
  return tr;
}

double energy_in_ball(const SpiralFamily& family, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  // The unit circle meets branch k exactly at angle theta_k.
  std::vector<double> breakpoints;
  breakpoints.reserve(family.branches() + 2);
  breakpoints.push_back(0.0);
  for (double th : family.theta())
    if (th > 0.0) breakpoints.push_back(th);
  breakpoints.push_back(kTwoPi);

  auto integrand = [&](double phi) { return std::norm(profile_unchecked(family, {1.0, phi}).w); };
  const auto res = quad::integrate(integrand, std::span<const double>(breakpoints), 0.0, 1e-14, 4000);
  const double r2 = r * r;
  return 0.25 * r2 * r2 * res.value;
}

}  // namespace logspiral
