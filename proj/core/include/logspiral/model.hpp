#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace logspiral {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unvalidated parameter record, as read from a config file or built in code.
struct FamilyParams {
  double a = 1.0;
  double mu = 0.0;
  std::vector<double> g;
  std::vector<double> theta;
};

// A = -2ai/(a+i), evaluated by the quotient form.
cplx growth_constant(double a);

// The same constant through the expanded form (-2a/(1+a^2))(1+ai).
cplx growth_constant_expanded(double a);

// pi*A + 2*pi*i = -2*pi/(a+i). Hyperbolic functions of pi*A are 2*pi*i
// periodic, so this bounded representative is used for all of them.
cplx pi_growth_shifted(double a);

/// Validated parameters of an M-branch logarithmic spiral vortex sheet.
///
/// Branch m is the curve Z_m(theta, t) = t^mu e^{a(theta - theta_m)} e^{i theta}
/// carrying circulation g_m t^{2mu-1} e^{2a(theta - theta_m)}. Instances are
/// immutable; every field evaluation in the library consumes one.
class SpiralFamily {
 public:
  // Throws Error{NonPositivePitch, ZeroCirculation, UnsortedPhases, LengthMismatch}.
  static SpiralFamily validate(FamilyParams raw);

  double a() const noexcept { return params_.a; }
  double mu() const noexcept { return params_.mu; }
  std::size_t branches() const noexcept { return params_.g.size(); }
  std::span<const double> g() const noexcept { return params_.g; }
  std::span<const double> theta() const noexcept { return params_.theta; }
  double g(std::size_t k) const { return params_.g.at(k); }
  double theta(std::size_t k) const { return params_.theta.at(k); }

  cplx A() const noexcept { return A_; }
  // pi*A shifted by 2*pi*i; see pi_growth_shifted.
  cplx pi_A() const noexcept { return pi_A_; }
  // 1 - e^{2 pi A}, computed without cancellation.
  cplx one_minus_exp_2piA() const noexcept { return one_minus_e2piA_; }

  const FamilyParams& params() const noexcept { return params_; }

  SpiralFamily with_mu(double mu) const;
  SpiralFamily with_g(std::vector<double> g) const;

  friend bool operator==(const SpiralFamily& x, const SpiralFamily& y) {
    return x.params_.a == y.params_.a && x.params_.mu == y.params_.mu &&
           x.params_.g == y.params_.g && x.params_.theta == y.params_.theta;
  }

 private:
  explicit SpiralFamily(FamilyParams p);

  FamilyParams params_;
  cplx A_;
  cplx pi_A_;
  cplx one_minus_e2piA_;
};

inline SpiralFamily validate_family(FamilyParams raw) {
  return SpiralFamily::validate(std::move(raw));
}

// The symmetric configuration g_m = g, theta_m = 2 pi m / M.
SpiralFamily alexander_family(double a, std::size_t M, double g, double mu);

/// Plane point in polar form. theta is deliberately not reduced: winding
/// numbers and complex powers are evaluated on the branch it selects.
struct PolarPoint {
  double r = 1.0;
  double theta = 0.0;

  static PolarPoint from_complex(cplx z);
  cplx to_complex() const { return std::polar(r, theta); }
};

// e^z - 1 for complex z, accurate when |z| is small.
cplx expm1(cplx z);

}  // namespace logspiral
