#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "logspiral/model.hpp"

namespace logspiral {

// ---------------------------------------------------------------------------
// Biot-Savart quadrature
// ---------------------------------------------------------------------------

// The two integrand representations along sigma. Direct is
// f(sigma) = sum_k g_k e^{2a sigma} / (r - e^{(a+i) sigma + i Delta_k}),
// integrable as sigma -> -inf. Compatible replaces e^{2a sigma} by
// r^2 e^{-2i sigma - 2i Delta_k}; it equals Direct only when both
// compatibility sums vanish, and decays as sigma -> +inf.
enum class IntegrandForm { Direct, Compatible };

cplx biot_savart_integrand(const SpiralFamily& family, PolarPoint zeta, double sigma,
                           IntegrandForm form);

// Simple pole sigma_j of the k-th term of f.
cplx integrand_pole(const SpiralFamily& family, PolarPoint zeta, std::size_t k, std::int64_t j);

struct QuadratureResult {
  cplx value;                    // (1 / 2 pi i) * integral of f over the real line
  double error_estimate = 0.0;   // quadrature estimate plus tail bounds
  int splits = 0;
  std::pair<double, double> tail_cutoffs;  // (sigma_minus, sigma_plus)
};

struct BiotSavartOptions {
  double tol = 1e-8;       // absolute, on the integral value
  double sigma_split = 0.0;
  int max_splits = 200000;
};

/// (1 / 2 pi i) ∫ f(sigma) dsigma at the self-similar point zeta, with the
/// Direct form left of sigma_split and the Compatible form right of it.
/// Throws Error{CompatibilityViolated, OnSheet, ToleranceNotMet}.
QuadratureResult biot_savart_integral(const SpiralFamily& family, PolarPoint zeta,
                                      const BiotSavartOptions& opts = {});

// Closed form of the same integral:
// sum_k g_k / (r (a+i)) r^{2a/(a+i)} e^{A Delta_k} e^{2 pi J_k A} / (1 - e^{2 pi A}).
cplx biot_savart_closed_form(const SpiralFamily& family, PolarPoint zeta);

// The same quantity as minus the sum of residues over the poles with
// j >= J_k, summed term by term until the geometric tail is negligible.
cplx residue_series(const SpiralFamily& family, PolarPoint zeta);

struct BiotSavartVelocity {
  QuadratureResult integral;
  cplx velocity;
};

/// Velocity at (z, t) recovered from the Biot-Savart integral:
/// v = t^{mu-1} e^{i theta} conj(2a I) with I the integral at z / t^mu.
/// tol is an absolute tolerance on v.
BiotSavartVelocity biot_savart_quadrature(const SpiralFamily& family, cplx z, double t, double tol,
                                          double sigma_split = 0.0);

// ---------------------------------------------------------------------------
// Finite-difference and matching checks
// ---------------------------------------------------------------------------

/// Max-norm of grad q + (mu-1) w - mu (z.grad) w + (w.grad) w by central
/// differences with step h at the t = 1 point z.
/// Throws Error{StencilCrossesSheet} when z is within 4h of Sigma.
double interior_euler_residual(const SpiralFamily& family, cplx z, double h);

struct MatchingSample {
  std::size_t branch = 0;
  double theta = 0.0;
};

struct MatchingResiduals {
  // Re(i dZ conj(w_avg - mu Z)) / e^{2a(theta - theta_m)}; equals
  // Im(a K_m + mu (a + i)).
  std::vector<double> velocity;
  // (q_right - q_left) / (g_m e^{2a(theta - theta_m)}); equals
  // (2a^2 / (a^2 + 1)) (Re K_m - (2mu - a^2 - 1) / (2a^2)).
  std::vector<double> pressure;
};

MatchingResiduals matching_residuals(const SpiralFamily& family,
                                     std::span<const MatchingSample> samples);

// ---------------------------------------------------------------------------
// Space-time weak form
// ---------------------------------------------------------------------------

// psi(x, t) = (1 - |x - center|^2 / R^2)^4_+ (1 - ((t - t_center) / T)^2)^4_+,
// test field phi = grad-perp psi.
struct WeakTestField {
  cplx center;
  double radius = 1.0;
  double t_center = 1.0;
  double t_half_width = 0.5;
};

struct WeakQuadSpec {
  int spatial_cells = 96;   // per side of the support's bounding box
  int time_cells = 24;
  int refine_levels = 4;    // extra halvings for cells meeting Sigma(t)
  std::int64_t max_evaluations = 200'000'000;
};

/// |∫∫ v.phi_t + v_i v_j d_i phi_j| / ∫∫ (|v||phi_t| + |v|^2 |grad phi|).
/// Throws Error{QuadratureBudgetExceeded}.
double weak_form_ratio(const SpiralFamily& family, const WeakTestField& field,
                       const WeakQuadSpec& spec = {});

std::vector<double> weak_form_residual(const SpiralFamily& family,
                                       std::span<const WeakTestField> fields,
                                       const WeakQuadSpec& spec = {});

// Fields centred on the sheet at t_center, cycling over branches.
std::vector<WeakTestField> sheet_test_fields(const SpiralFamily& family, std::size_t count);

std::vector<double> weak_form_residual(const SpiralFamily& family, std::size_t test_count,
                                       const WeakQuadSpec& spec = {});

// A field whose support stays inside one region for its whole time window.
WeakTestField interior_test_field(const SpiralFamily& family);

// The integrand is smooth there, so only spatial resolution matters; the
// midpoint error falls roughly like h^3.5 because psi is only C^3 at the rim.
WeakQuadSpec interior_quad_spec();

}  // namespace logspiral
