#include "logspiral/model.hpp"

#include <cmath>
#include <string>

#include "logspiral/errors.hpp"

namespace logspiral {

cplx growth_constant(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::NonPositivePitch, "a = " + std::to_string(a));
  const cplx ai(0.0, a);
  return -2.0 * ai / cplx(a, 1.0);
}

cplx growth_constant_expanded(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::NonPositivePitch, "a = " + std::to_string(a));
  return (-2.0 * a / (1.0 + a * a)) * cplx(1.0, a);
}

cplx pi_growth_shifted(double a) { return -kTwoPi / cplx(a, 1.0); }

cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

SpiralFamily::SpiralFamily(FamilyParams p)
    : params_(std::move(p)),
      A_(growth_constant(params_.a)),
      pi_A_(pi_growth_shifted(params_.a)),
      one_minus_e2piA_(-expm1(2.0 * pi_A_)) {}

SpiralFamily SpiralFamily::validate(FamilyParams raw) {
  if (!(raw.a > 0.0) || !std::isfinite(raw.a))
    throw Error(ErrorCode::NonPositivePitch, "spiral pitch a must be positive and finite");
  if (!std::isfinite(raw.mu)) throw Error(ErrorCode::InvalidArgument, "mu must be finite");
  if (raw.g.size() != raw.theta.size())
    throw Error(ErrorCode::LengthMismatch, "g has " + std::to_string(raw.g.size()) +
                                               " entries, theta has " +
                                               std::to_string(raw.theta.size()));
  if (raw.g.empty()) throw Error(ErrorCode::LengthMismatch, "at least one branch is required");
  for (std::size_t k = 0; k < raw.g.size(); ++k) {
    if (raw.g[k] == 0.0 || !std::isfinite(raw.g[k]))
      throw Error(ErrorCode::ZeroCirculation, "g[" + std::to_string(k) + "] must be nonzero");
  }
  for (std::size_t k = 0; k < raw.theta.size(); ++k) {
    const double th = raw.theta[k];
    if (!(th >= 0.0 && th < kTwoPi))
      throw Error(ErrorCode::UnsortedPhases,
                  "theta[" + std::to_string(k) + "] outside [0, 2pi)");
    if (k > 0 && !(raw.theta[k - 1] < th))
      throw Error(ErrorCode::UnsortedPhases, "phases must be strictly increasing");
  }
  return SpiralFamily(std::move(raw));
}

SpiralFamily SpiralFamily::with_mu(double mu) const {
  FamilyParams p = params_;
  p.mu = mu;
  return validate(std::move(p));
}

SpiralFamily SpiralFamily::with_g(std::vector<double> g) const {
  FamilyParams p = params_;
  p.g = std::move(g);
  return validate(std::move(p));
}

SpiralFamily alexander_family(double a, std::size_t M, double g, double mu) {
  FamilyParams p;
  p.a = a;
  p.mu = mu;
  p.g.assign(M, g);
  p.theta.resize(M);
  for (std::size_t m = 0; m < M; ++m) p.theta[m] = kTwoPi * static_cast<double>(m) / static_cast<double>(M);
  return SpiralFamily::validate(std::move(p));
}

PolarPoint PolarPoint::from_complex(cplx z) { return {std::abs(z), std::arg(z)}; }

}  // namespace logspiral
