#include "logspiral/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logspiral/errors.hpp"

namespace logspiral {

namespace {

void check_branch(const SpiralFamily& family, std::size_t k) {
  if (k >= family.branches())
    throw Error(ErrorCode::BranchOutOfRange,
                "branch " + std::to_string(k) + " of " + std::to_string(family.branches()));
}

bool winding_condition(double a, std::int64_t j, double theta_k, double theta, double log_r) {
  return a * (kTwoPi * static_cast<double>(j) + theta_k - theta) + log_r > 0.0;
}

// Wraps x into [-pi, pi).
double wrap_pi(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y - kPi;
}

cplx branch_point(double a, double theta_k, double s) {
  return std::exp(a * (s - theta_k)) * cplx(std::cos(s), std::sin(s));
}

}  // namespace

std::int64_t winding_number(const SpiralFamily& family, PolarPoint p, std::size_t k) {
  check_branch(family, k);
  const double a = family.a();
  const double theta_k = family.theta(k);
  const double log_r = std::log(p.r);
  const double s = (p.theta - theta_k - log_r / a) / kTwoPi;
  auto j = static_cast<std::int64_t>(std::floor(s)) + 1;
  // The closed form can be off by one when s rounds onto an integer; settle
  // it against the defining inequality.
  while (winding_condition(a, j - 1, theta_k, p.theta, log_r)) --j;
  while (!winding_condition(a, j, theta_k, p.theta, log_r)) ++j;
  return j;
}

WindingVector winding_vector(const SpiralFamily& family, PolarPoint p) {
  WindingVector J(family.branches());
  for (std::size_t k = 0; k < J.size(); ++k) J[k] = winding_number(family, p, k);
  return J;
}

WindingLimits winding_limits(const SpiralFamily& family, std::size_t m, double /*theta*/,
                             std::size_t k) {
  check_branch(family, m);
  check_branch(family, k);
  const double tk = family.theta(k);
  const double tm = family.theta(m);
  return {tk < tm ? 1 : 0, tk <= tm ? 1 : 0};
}

WindingVector winding_right(const SpiralFamily& family, std::size_t m) {
  WindingVector J(family.branches());
  for (std::size_t k = 0; k < J.size(); ++k) J[k] = winding_limits(family, m, 0.0, k).right;
  return J;
}

WindingVector winding_left(const SpiralFamily& family, std::size_t m) {
  WindingVector J(family.branches());
  for (std::size_t k = 0; k < J.size(); ++k) J[k] = winding_limits(family, m, 0.0, k).left;
  return J;
}

SheetPoint sheet_point(const SpiralFamily& family, std::size_t m, double theta, double t) {
  check_branch(family, m);
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t = " + std::to_string(t));
  const double a = family.a();
  const double mu = family.mu();
  const double growth = std::exp(a * (theta - family.theta(m)));

  SheetPoint sp;
  sp.branch = m;
  sp.theta = theta;
  sp.t = t;
  sp.Z = std::pow(t, mu) * growth * cplx(std::cos(theta), std::sin(theta));
  sp.dZ = cplx(a, 1.0) * sp.Z;
  const double speed = std::abs(sp.dZ);
  sp.tangent = sp.dZ / speed;
  sp.normal = cplx(0.0, 1.0) * sp.tangent;
  sp.Gamma = family.g(m) * std::pow(t, 2.0 * mu - 1.0) * growth * growth;
  const double dGamma = 2.0 * a * sp.Gamma;
  sp.gamma = dGamma / speed;
  return sp;
}

double spiral_phase(const SpiralFamily& family, PolarPoint p) {
  return p.theta - std::log(p.r) / family.a();
}

std::size_t region_index(const SpiralFamily& family, PolarPoint p) {
  double phase = std::fmod(spiral_phase(family, p), kTwoPi);
  if (phase < 0.0) phase += kTwoPi;
  const auto th = family.theta();
  // Largest m with theta_m <= phase; phases below theta_0 wrap into the last gap.
  auto it = std::upper_bound(th.begin(), th.end(), phase);
  if (it == th.begin()) return family.branches() - 1;
  return static_cast<std::size_t>(std::distance(th.begin(), it) - 1);
}

double distance_to_branch(const SpiralFamily& family, PolarPoint zeta, std::size_t k) {
  check_branch(family, k);
  const double a = family.a();
  const double theta_k = family.theta(k);
  const cplx z = zeta.to_complex();
  const std::int64_t J = winding_number(family, zeta, k);

  // Branch k crosses the ray through zeta just inside it at s = theta - 2 pi J
  // and just outside at s = theta - 2 pi (J - 1); search those two loops.
  const double s_inner = zeta.theta - kTwoPi * static_cast<double>(J);
  const double lo = s_inner - kPi;
  const double hi = s_inner + 3.0 * kPi;

  auto dist2 = [&](double s) { return std::norm(z - branch_point(a, theta_k, s)); };

  constexpr int kSamples = 256;
  const double step = (hi - lo) / kSamples;
  double best_s = lo;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double s = lo + step * i;
    const double d = dist2(s);
    if (d < best) {
      best = d;
      best_s = s;
    }
  }

  // Golden-section refinement on the bracketing sample interval.
  double x0 = best_s - step;
  double x3 = best_s + step;
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = x3 - kInvPhi * (x3 - x0);
  double x2 = x0 + kInvPhi * (x3 - x0);
  double f1 = dist2(x1);
  double f2 = dist2(x2);
  for (int it = 0; it < 80 && (x3 - x0) > 1e-13 * std::max(1.0, std::abs(best_s)); ++it) {
    if (f1 < f2) {
      x3 = x2;
      x2 = x1;
      f2 = f1;
      x1 = x3 - kInvPhi * (x3 - x0);
      f1 = dist2(x1);
    } else {
      x0 = x1;
      x1 = x2;
      f1 = f2;
      x2 = x0 + kInvPhi * (x3 - x0);
      f2 = dist2(x2);
    }
  }
  double s = 0.5 * (x0 + x3);

  // Newton polish on d/ds |z - Z(s)|^2 / 2, kept only while it improves.
  const cplx ai(a, 1.0);
  double fs = dist2(s);
  for (int it = 0; it < 4; ++it) {
    const cplx Z = branch_point(a, theta_k, s);
    const cplx diff = z - Z;
    const cplx dZ = ai * Z;
    const cplx d2Z = ai * dZ;
    const double grad = -std::real(std::conj(diff) * dZ);
    const double hess = std::norm(dZ) - std::real(std::conj(diff) * d2Z);
    if (!(hess > 0.0)) break;
    const double cand = s - grad / hess;
    const double fc = dist2(cand);
    if (!(fc <= fs)) break;
    s = cand;
    fs = fc;
  }
  return std::sqrt(std::min(fs, best));
}

bool on_sheet(const SpiralFamily& family, PolarPoint zeta, double rel_tol) {
  const double tol = rel_tol * zeta.r;
  const double a = family.a();
  const double phase = spiral_phase(family, zeta);
  double delta = kPi;
  for (double th : family.theta()) delta = std::min(delta, std::abs(wrap_pi(phase - th)));
  // Conservative lower bound on the distance to the nearest branch from the
  // phase offset; only points that fail it get the exact search.
  const double bound = 0.1 * zeta.r * std::min(1.0, a * delta) / std::sqrt(1.0 + a * a);
  if (bound > tol) return false;
  for (std::size_t k = 0; k < family.branches(); ++k)
    if (distance_to_branch(family, zeta, k) <= tol) return true;
  return false;
}

Location locate_point(const SpiralFamily& family, PolarPoint p, double t, double rel_tol) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t = " + std::to_string(t));
  if (!(p.r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const double scale = std::pow(t, family.mu());
  const PolarPoint zeta{p.r / scale, p.theta};

  Location loc;
  loc.region = region_index(family, zeta);
  loc.winding = winding_vector(family, zeta);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < family.branches(); ++k) d = std::min(d, distance_to_branch(family, zeta, k));
  loc.distance = d * scale;
  if (loc.distance <= rel_tol * p.r)
    throw Error(ErrorCode::OnSheet, "point lies on Sigma(t) within tolerance");
  return loc;
}

}  // namespace logspiral
