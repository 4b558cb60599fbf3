#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logspiral/errors.hpp"
#include "logspiral/field.hpp"
#include "logspiral/geometry.hpp"
#include "logspiral/oracle.hpp"

namespace logspiral {

namespace {

double wrap_pi(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y - kPi;
}

struct Accumulator {
  double numer = 0.0;
  double denom = 0.0;
  std::int64_t evaluations = 0;
};

class WeakIntegrator {
 public:
  WeakIntegrator(const SpiralFamily& family, const WeakTestField& field, const WeakQuadSpec& spec)
      : family_(family), field_(field), spec_(spec),
        lipschitz_(std::sqrt(1.0 + 1.0 / (family.a() * family.a()))) {}

  Accumulator run() {
    const int nt = spec_.time_cells;
    const int ns = spec_.spatial_cells;
    const double T = field_.t_half_width;
    const double dt = 2.0 * T / nt;
    const double R = field_.radius;
    const double h = 2.0 * R / ns;
    for (int it = 0; it < nt; ++it) {
      const double t = field_.t_center - T + (it + 0.5) * dt;
      const double s = (t - field_.t_center) / T;
      const double tu = 1.0 - s * s;
      time_val_ = tu * tu * tu * tu;
      time_der_ = 4.0 * tu * tu * tu * (-2.0 * s / T);
      t_ = t;
      scale_ = std::pow(t, family_.mu());
      vscale_ = scale_ / t;  // t^{mu-1}
      weight_t_ = dt;
      for (int ix = 0; ix < ns; ++ix)
        for (int iy = 0; iy < ns; ++iy) {
          const cplx c = field_.center + cplx(-R + (ix + 0.5) * h, -R + (iy + 0.5) * h);
          cell(c, 0.5 * h, 0);
        }
    }
    return acc_;
  }

 private:
  bool near_sheet(cplx c, double half) const {
    const double rho = half * std::sqrt(2.0) / scale_;
    const cplx zeta = c / scale_;
    const double r = std::abs(zeta);
    if (r <= rho) return true;
    const double bound = rho * lipschitz_ / (r - rho);
    const double phase = spiral_phase(family_, PolarPoint::from_complex(zeta));
    for (double th : family_.theta())
      if (std::abs(wrap_pi(phase - th)) <= bound) return true;
    return false;
  }

  void cell(cplx c, double half, int level) {
    const double R = field_.radius;
    if (std::abs(c - field_.center) >= R + half * std::sqrt(2.0)) return;
    if (level < spec_.refine_levels && near_sheet(c, half)) {
      const double q = 0.5 * half;
      cell(c + cplx(-q, -q), q, level + 1);
      cell(c + cplx(q, -q), q, level + 1);
      cell(c + cplx(-q, q), q, level + 1);
      cell(c + cplx(q, q), q, level + 1);
      return;
    }
    evaluate(c, 4.0 * half * half * weight_t_);
  }

  void evaluate(cplx x, double weight) {
    if (++acc_.evaluations > spec_.max_evaluations)
      throw Error(ErrorCode::QuadratureBudgetExceeded,
                  "weak-form quadrature exceeded " + std::to_string(spec_.max_evaluations) +
                      " evaluations");
    const double R2 = field_.radius * field_.radius;
    const cplx d = x - field_.center;
    const double dx = d.real();
    const double dy = d.imag();
    const double u = 1.0 - (dx * dx + dy * dy) / R2;
    if (u <= 0.0) return;
    const double ux = -2.0 * dx / R2;
    const double uy = -2.0 * dy / R2;
    const double uxx = -2.0 / R2;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double Sx = 4.0 * u3 * ux;
    const double Sy = 4.0 * u3 * uy;
    const double Sxx = 12.0 * u2 * ux * ux + 4.0 * u3 * uxx;
    const double Syy = 12.0 * u2 * uy * uy + 4.0 * u3 * uxx;
    const double Sxy = 12.0 * u2 * ux * uy;

    const double psi_xt = Sx * time_der_;
    const double psi_yt = Sy * time_der_;
    const double psi_xx = Sxx * time_val_;
    const double psi_yy = Syy * time_val_;
    const double psi_xy = Sxy * time_val_;

    const ProfileValue pv = profile_unchecked(family_, PolarPoint::from_complex(x / scale_));
    const double v1 = vscale_ * pv.w.real();
    const double v2 = vscale_ * pv.w.imag();

    const double term_t = -v1 * psi_yt + v2 * psi_xt;
    const double term_x = -v1 * v1 * psi_xy + v1 * v2 * psi_xx - v1 * v2 * psi_yy + v2 * v2 * psi_xy;
    const double vmag2 = v1 * v1 + v2 * v2;
    const double phi_t = std::hypot(psi_xt, psi_yt);
    const double grad_phi = std::sqrt(2.0 * psi_xy * psi_xy + psi_xx * psi_xx + psi_yy * psi_yy);
    acc_.numer += weight * (term_t + term_x);
    acc_.denom += weight * (std::sqrt(vmag2) * phi_t + vmag2 * grad_phi);
  }

  const SpiralFamily& family_;
  const WeakTestField& field_;
  const WeakQuadSpec& spec_;
  double lipschitz_;
  double t_ = 1.0, scale_ = 1.0, vscale_ = 1.0, weight_t_ = 0.0;
  double time_val_ = 0.0, time_der_ = 0.0;
  Accumulator acc_;
};

}  // namespace

double weak_form_ratio(const SpiralFamily& family, const WeakTestField& field,
                       const WeakQuadSpec& spec) {
  if (!(field.radius > 0.0) || !(field.t_half_width > 0.0))
    throw Error(ErrorCode::InvalidArgument, "test field needs positive radius and time width");
  if (!(field.t_center - field.t_half_width > 0.0))
    throw Error(ErrorCode::NonPositiveTime, "test field support reaches t <= 0");
  if (std::abs(field.center) <= field.radius)
    throw Error(ErrorCode::InvalidArgument, "test field support contains the origin");
  if (spec.spatial_cells < 1 || spec.time_cells < 1 || spec.refine_levels < 0)
    throw Error(ErrorCode::InvalidArgument, "invalid weak-form quadrature spec");
  const Accumulator acc = WeakIntegrator(family, field, spec).run();
  if (!(acc.denom > 0.0)) return 0.0;
  return std::abs(acc.numer) / acc.denom;
}

std::vector<double> weak_form_residual(const SpiralFamily& family,
                                       std::span<const WeakTestField> fields,
                                       const WeakQuadSpec& spec) {
  std::vector<double> out;
  out.reserve(fields.size());
  for (const WeakTestField& f : fields) out.push_back(weak_form_ratio(family, f, spec));
  return out;
}

std::vector<WeakTestField> sheet_test_fields(const SpiralFamily& family, std::size_t count) {
  std::vector<WeakTestField> out;
  out.reserve(count);
  const std::size_t M = family.branches();
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t m = i % M;
    const double theta = family.theta(m) + 0.4 + 1.7 * static_cast<double>(i / M);
    const SheetPoint sp = sheet_point(family, m, theta, 1.0);
    WeakTestField f;
    f.center = sp.Z;
    f.radius = 0.3 * std::abs(sp.Z);
    out.push_back(f);
  }
  return out;
}

std::vector<double> weak_form_residual(const SpiralFamily& family, std::size_t test_count,
                                       const WeakQuadSpec& spec) {
  const auto fields = sheet_test_fields(family, test_count);
  return weak_form_residual(family, std::span<const WeakTestField>(fields), spec);
}

WeakTestField interior_test_field(const SpiralFamily& family) {
  // Widest gap between consecutive phases, wrapping past 2 pi.
  const std::size_t M = family.branches();
  double best_gap = -1.0;
  double mid = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    const double lo = family.theta(k);
    const double hi = k + 1 < M ? family.theta(k + 1) : family.theta(0) + kTwoPi;
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      mid = 0.5 * (lo + hi);
    }
  }
  WeakTestField f;
  f.center = std::polar(1.0, mid);
  double dmin = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 41;
  for (int i = 0; i < kSamples; ++i) {
    const double t = f.t_center - f.t_half_width + 2.0 * f.t_half_width * i / (kSamples - 1);
    const double scale = std::pow(t, family.mu());
    const PolarPoint zeta = PolarPoint::from_complex(f.center / scale);
    for (std::size_t k = 0; k < M; ++k)
      dmin = std::min(dmin, scale * distance_to_branch(family, zeta, k));
  }
  f.radius = std::min(0.5 * dmin, 0.8);
  return f;
}

WeakQuadSpec interior_quad_spec() {
  WeakQuadSpec spec;
  spec.spatial_cells = 256;
  spec.time_cells = 12;
  spec.refine_levels = 0;
  return spec;
}

}  // namespace logspiral
