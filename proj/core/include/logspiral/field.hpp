#pragma once

#include <cstddef>
#include <span>

#include "logspiral/geometry.hpp"
#include "logspiral/model.hpp"

namespace logspiral {

// Self-similar profile at a point off the sheet.
struct FieldSample {
  cplx w;    // velocity w1 + i w2
  cplx Phi;  // complex potential, conj(w) = Phi'
  double q = 0.0;  // pressure profile
  std::size_t region = 0;
  WindingVector winding;
};

// One-sided limits on branch m at Z_m(theta, t), scaled to time t.
struct SheetTrace {
  cplx w_right;
  cplx w_left;
  cplx jump;     // w_right - w_left
  cplx average;  // (w_right + w_left) / 2
  double q_right = 0.0;
  double q_left = 0.0;
};

struct SpacetimeSample {
  cplx v;
  double p = 0.0;
};

// Profile evaluated with an explicitly supplied winding vector. This is the
// primitive behind every public evaluation; with the winding of a sheet
// side it gives the one-sided limit there.
struct ProfileValue {
  cplx w;
  cplx Phi;
  double q = 0.0;
};
ProfileValue profile_with_winding(const SpiralFamily& family, PolarPoint p,
                                  std::span<const std::int64_t> winding);

// Evaluates at p using its own winding vector without the on-sheet guard.
// On the sheet this returns the left limit. Intended for a.e. quadrature.
ProfileValue profile_unchecked(const SpiralFamily& family, PolarPoint p);

/// w(z), summed branch by branch. Throws Error{OnSheet} within
/// kOnSheetRelTol of the sheet.
cplx profile_w(const SpiralFamily& family, PolarPoint p);

/// w(z) through conj(w) = D iA z^{iA-1}, D the winding-dependent amplitude.
cplx profile_w_simple(const SpiralFamily& family, PolarPoint p);

// D(r, theta) = sum_k g_k e^{A(theta_k + 2 pi J_k)} / (1 - e^{2 pi A}).
cplx potential_amplitude(const SpiralFamily& family, PolarPoint p);

cplx potential_Phi(const SpiralFamily& family, PolarPoint p);

// q = -Re((2mu - 1) Phi - mu z conj(w)) - |w|^2 / 2.
double pressure_q(const SpiralFamily& family, PolarPoint p);

FieldSample sample_profile(const SpiralFamily& family, PolarPoint p);

// v(z, t) = t^{mu-1} w(z / t^mu), p(z, t) = t^{2mu-2} q(z / t^mu).
SpacetimeSample spacetime_fields(const SpiralFamily& family, cplx z, double t);

SheetTrace sheet_trace(const SpiralFamily& family, std::size_t m, double theta, double t);

// Integral of |w|^2 over B(0, r), computed as (r^4 / 4) times the integral
// of |w(e^{i phi})|^2 over one turn, split where the unit circle meets Sigma.
double energy_in_ball(const SpiralFamily& family, double r);

}  // namespace logspiral
