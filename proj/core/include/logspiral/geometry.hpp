#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "logspiral/model.hpp"

namespace logspiral {

// J[k] = J(r, theta, k) for every branch k.
using WindingVector = std::vector<std::int64_t>;

inline constexpr double kOnSheetRelTol = 1e-12;

/// Least integer j with a(2 pi j + theta_k - theta) + ln r > 0.
std::int64_t winding_number(const SpiralFamily& family, PolarPoint p, std::size_t k);
WindingVector winding_vector(const SpiralFamily& family, PolarPoint p);

// One-sided limits of J(., ., k) at the point Z_m(theta) of branch m.
struct WindingLimits {
  std::int64_t right = 0;
  std::int64_t left = 0;
};
WindingLimits winding_limits(const SpiralFamily& family, std::size_t m, double theta, std::size_t k);
WindingVector winding_right(const SpiralFamily& family, std::size_t m);
WindingVector winding_left(const SpiralFamily& family, std::size_t m);

struct SheetPoint {
  std::size_t branch = 0;
  double theta = 0.0;
  double t = 1.0;
  cplx Z;        // position
  cplx dZ;       // d/dtheta of the position
  cplx tangent;  // dZ / |dZ|
  cplx normal;   // tangent rotated by +pi/2; points to the left side
  double Gamma = 0.0;  // circulation
  double gamma = 0.0;  // vorticity density d(Gamma)/d(theta) / |dZ|
};
SheetPoint sheet_point(const SpiralFamily& family, std::size_t m, double theta, double t);

// theta - ln(r)/a: constant along every spiral, equal to theta_k (mod 2 pi)
// exactly on branch k.
double spiral_phase(const SpiralFamily& family, PolarPoint p);

// Region Omega_m lies between branch m and branch m+1 (branch M is branch 0).
std::size_t region_index(const SpiralFamily& family, PolarPoint p);

// Euclidean distance from the self-similar point zeta to branch k at t = 1.
double distance_to_branch(const SpiralFamily& family, PolarPoint zeta, std::size_t k);

struct Location {
  std::size_t region = 0;
  WindingVector winding;
  double distance = 0.0;  // to the nearest branch of Sigma(t), physical units
};

/// Locates the physical point p at time t. The point is rescaled to the
/// t = 1 slice internally. Throws Error{OnSheet} when p lies within
/// rel_tol * r of Sigma(t), Error{NonPositiveTime} for t <= 0.
Location locate_point(const SpiralFamily& family, PolarPoint p, double t,
                      double rel_tol = kOnSheetRelTol);

// True when zeta is within rel_tol * r of Sigma. A cheap phase bound settles
// most points; only those close to a branch get the exact distance search.
bool on_sheet(const SpiralFamily& family, PolarPoint zeta, double rel_tol = kOnSheetRelTol);

}  // namespace logspiral
