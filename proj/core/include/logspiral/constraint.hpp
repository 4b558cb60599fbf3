#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "logspiral/model.hpp"

namespace logspiral {

using ComplexMatrix = Eigen::MatrixXcd;

// Entry (m, k) = e^{A(theta_k - theta_m)} times e^{-pi A} (k > m),
// cosh(pi A) (k = m) or e^{pi A} (k < m).
ComplexMatrix coupling_matrix(const SpiralFamily& family);

// -(a^2 + 1 - 2mu + 2a mu i) / (2a^2)
cplx constraint_rhs(double a, double mu);

struct ConstraintReport {
  ComplexMatrix Amk;
  std::vector<cplx> K;         // (1 / sinh(pi A)) sum_k Amk g_k
  cplx rhs;
  std::vector<cplx> residual;  // K_m - rhs
  std::vector<double> velocity_residual;  // Im(a K_m + mu (a + i))
  std::vector<double> pressure_residual;  // Re K_m - (2mu - a^2 - 1) / (2a^2)
  cplx compat1;                // sum_k g_k e^{-i theta_k}
  cplx compat2;                // sum_k g_k e^{-2i theta_k}

  double residual_max() const;
  // The family is a weak Euler solution iff every residual vanishes.
  bool is_weak_solution(double tol) const { return residual_max() <= tol; }
};

ConstraintReport constraint_report(const SpiralFamily& family);

struct Compatibility {
  bool holds = false;
  cplx compat1;
  cplx compat2;
};

// holds iff both sums are within 1e-12 * sum |g_k| of zero.
Compatibility compatibility_check(const SpiralFamily& family);

struct AlexanderSolution {
  double g = 0.0;
  double mu = 0.0;
  SpiralFamily family;
};

/// Closed-form (g, mu) for the symmetric M-branch family at pitch a.
/// Throws Error{DegenerateDirection} when coth(pi A / M) is parallel to
/// -1 + ai, in which case no real pair exists.
AlexanderSolution alexander_solve(double a, std::size_t M);

// coth(pi A / M), the aggregate of every row of the symmetric coupling matrix
// divided by sinh(pi A).
cplx alexander_coth(double a, std::size_t M);

// Unknowns that general_solve may adjust. theta_0 is the rotation gauge.
struct FreeSet {
  bool mu = false;
  std::vector<bool> g;
  std::vector<bool> theta;

  std::size_t count() const;
};

/// Parses a comma list of "mu", "g", "g<k>", "theta", "theta<k>".
/// Throws Error{InvalidGauge} for theta0 and Error{InvalidArgument} otherwise.
FreeSet parse_free_set(std::string_view list, std::size_t M);

struct SolveResult {
  SpiralFamily family;
  double residual_max = 0.0;
  int iterations = 0;
};

/// Damped Gauss-Newton on the 2M real components of the constraint residual
/// over the free unknowns. Central-difference Jacobian, least-squares step,
/// step halving until the residual norm decreases.
/// Throws Error{NoConvergence, SingularJacobian, InvalidGauge}.
SolveResult general_solve(const SpiralFamily& initial, const FreeSet& free, int max_iter,
                          double tol);

}  // namespace logspiral
