#include "logspiral/constraint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>

#include "logspiral/errors.hpp"

namespace logspiral {

ComplexMatrix coupling_matrix(const SpiralFamily& family) {
  const std::size_t M = family.branches();
  const cplx A = family.A();
  const cplx piA = family.pi_A();
  const cplx e_plus = std::exp(piA);
  const cplx e_minus = std::exp(-piA);
  const cplx diag = std::cosh(piA);
  ComplexMatrix Amk(M, M);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < M; ++k) {
      const cplx base = std::exp(A * (family.theta(k) - family.theta(m)));
      const cplx weight = k > m ? e_minus : (k == m ? diag : e_plus);
      Amk(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = base * weight;
    }
  }
  return Amk;
}

cplx constraint_rhs(double a, double mu) {
  return -cplx(a * a + 1.0 - 2.0 * mu, 2.0 * a * mu) / (2.0 * a * a);
}

double ConstraintReport::residual_max() const {
  double worst = 0.0;
  for (const cplx& r : residual) worst = std::max({worst, std::abs(r.real()), std::abs(r.imag())});
  return worst;
}

ConstraintReport constraint_report(const SpiralFamily& family) {
  const std::size_t M = family.branches();
  const double a = family.a();
  const double mu = family.mu();
  const cplx sinh_piA = std::sinh(family.pi_A());

  ConstraintReport rep;
  rep.Amk = coupling_matrix(family);
  rep.rhs = constraint_rhs(a, mu);
  const double pressure_target = (2.0 * mu - a * a - 1.0) / (2.0 * a * a);
  rep.K.resize(M);
  rep.residual.resize(M);
  rep.velocity_residual.resize(M);
  rep.pressure_residual.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    cplx row{0.0, 0.0};
    for (std::size_t k = 0; k < M; ++k)
      row += rep.Amk(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) * family.g(k);
    const cplx K = row / sinh_piA;
    rep.K[m] = K;
    rep.residual[m] = K - rep.rhs;
    rep.velocity_residual[m] = std::imag(a * K + mu * cplx(a, 1.0));
    rep.pressure_residual[m] = K.real() - pressure_target;
  }
  const Compatibility c = compatibility_check(family);
  rep.compat1 = c.compat1;
  rep.compat2 = c.compat2;
  return rep;
}

Compatibility compatibility_check(const SpiralFamily& family) {
  Compatibility c;
  double scale = 0.0;
  for (std::size_t k = 0; k < family.branches(); ++k) {
    const double th = family.theta(k);
    c.compat1 += family.g(k) * std::polar(1.0, -th);
    c.compat2 += family.g(k) * std::polar(1.0, -2.0 * th);
    scale += std::abs(family.g(k));
  }
  const double tol = 1e-12 * scale;
  c.holds = std::abs(c.compat1) <= tol && std::abs(c.compat2) <= tol;
  return c;
}

cplx alexander_coth(double a, std::size_t M) {
  if (M == 0) throw Error(ErrorCode::LengthMismatch, "M must be positive");
  // pi A = pi_growth_shifted(a) - 2 pi i.
  const cplx arg = (pi_growth_shifted(a) - cplx(0.0, kTwoPi)) / static_cast<double>(M);
  return 1.0 / std::tanh(arg);
}

AlexanderSolution alexander_solve(double a, std::size_t M) {
  if (!(a > 0.0)) throw Error(ErrorCode::NonPositivePitch, "a must be positive");
  const cplx c = alexander_coth(a, M);
  // Real and imaginary parts of a^2 + 1 - 2mu + 2a mu i = -2 a^2 g c.
  const double direction = c.imag() + a * c.real();
  if (!(std::abs(direction) > 1e-12))
    throw Error(ErrorCode::DegenerateDirection,
                "coth(pi A / M) is parallel to -1 + ai; no real (g, mu) exists");
  const double g = -(a * a + 1.0) / (2.0 * a * direction);
  const double mu = -a * g * c.imag();
  return {g, mu, alexander_family(a, M, g, mu)};
}

std::size_t FreeSet::count() const {
  std::size_t n = mu ? 1 : 0;
  n += static_cast<std::size_t>(std::count(g.begin(), g.end(), true));
  n += static_cast<std::size_t>(std::count(theta.begin(), theta.end(), true));
  return n;
}

FreeSet parse_free_set(std::string_view list, std::size_t M) {
  FreeSet fs;
  fs.g.assign(M, false);
  fs.theta.assign(M, false);

  auto index_suffix = [](std::string_view s) -> std::optional<std::size_t> {
    std::size_t idx = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, idx);
    if (ec != std::errc() || ptr != last || s.empty()) return std::nullopt;
    return idx;
  };

  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view tok = list.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    pos = comma + 1;
    if (tok.empty()) continue;

    if (tok == "mu") {
      fs.mu = true;
    } else if (tok == "g") {
      fs.g.assign(M, true);
    } else if (tok == "theta") {
      for (std::size_t k = 1; k < M; ++k) fs.theta[k] = true;
    } else if (tok.starts_with("theta")) {
      const auto idx = index_suffix(tok.substr(5));
      if (!idx || *idx >= M) throw Error(ErrorCode::InvalidArgument, "bad free variable '" + std::string(tok) + "'");
      if (*idx == 0) throw Error(ErrorCode::InvalidGauge, "theta0 fixes the rotation gauge and cannot be free");
      fs.theta[*idx] = true;
    } else if (tok.starts_with("g")) {
      const auto idx = index_suffix(tok.substr(1));
      if (!idx || *idx >= M) throw Error(ErrorCode::InvalidArgument, "bad free variable '" + std::string(tok) + "'");
      fs.g[*idx] = true;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown free variable '" + std::string(tok) + "'");
    }
  }
  return fs;
}

namespace {

struct Unknowns {
  const SpiralFamily& base;
  const FreeSet& free;

  Eigen::VectorXd pack(const FamilyParams& p) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(free.count()));
    Eigen::Index i = 0;
    if (free.mu) x(i++) = p.mu;
    for (std::size_t k = 0; k < p.g.size(); ++k)
      if (free.g[k]) x(i++) = p.g[k];
    for (std::size_t k = 0; k < p.theta.size(); ++k)
      if (free.theta[k]) x(i++) = p.theta[k];
    return x;
  }

  // nullopt when x leaves the admissible parameter set.
  std::optional<SpiralFamily> unpack(const Eigen::VectorXd& x) const {
    FamilyParams p = base.params();
    Eigen::Index i = 0;
    if (free.mu) p.mu = x(i++);
    for (std::size_t k = 0; k < p.g.size(); ++k)
      if (free.g[k]) p.g[k] = x(i++);
    for (std::size_t k = 0; k < p.theta.size(); ++k)
      if (free.theta[k]) p.theta[k] = x(i++);
    try {
      return SpiralFamily::validate(std::move(p));
    } catch (const Error&) {
      return std::nullopt;
    }
  }
};

Eigen::VectorXd residual_vector(const SpiralFamily& family) {
  const ConstraintReport rep = constraint_report(family);
  Eigen::VectorXd F(static_cast<Eigen::Index>(2 * rep.residual.size()));
  for (std::size_t m = 0; m < rep.residual.size(); ++m) {
    F(static_cast<Eigen::Index>(2 * m)) = rep.residual[m].real();
    F(static_cast<Eigen::Index>(2 * m + 1)) = rep.residual[m].imag();
  }
  return F;
}

}  // namespace

SolveResult general_solve(const SpiralFamily& initial, const FreeSet& free, int max_iter,
                          double tol) {
  const std::size_t M = initial.branches();
  if (free.g.size() != M || free.theta.size() != M)
    throw Error(ErrorCode::LengthMismatch, "free set does not match the number of branches");
  if (free.theta[0]) throw Error(ErrorCode::InvalidGauge, "theta0 fixes the rotation gauge and cannot be free");

  const Unknowns unknowns{initial, free};
  SpiralFamily current = initial;
  Eigen::VectorXd x = unknowns.pack(current.params());
  Eigen::VectorXd F = residual_vector(current);
  const Eigen::Index n = x.size();

  for (int iter = 0;; ++iter) {
    if (F.lpNorm<Eigen::Infinity>() <= tol) return {current, F.lpNorm<Eigen::Infinity>(), iter};
    if (n == 0) throw Error(ErrorCode::NoConvergence, "no free variables and the family is not a solution");
    if (iter >= max_iter)
      throw Error(ErrorCode::NoConvergence, "iteration budget exhausted at residual " +
                                                std::to_string(F.lpNorm<Eigen::Infinity>()));

    Eigen::MatrixXd Jac(F.size(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(i)));
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp(i) += h;
      xm(i) -= h;
      const auto fp = unknowns.unpack(xp);
      const auto fm = unknowns.unpack(xm);
      // Fall back to a one-sided difference at the edge of the admissible set.
      if (fp && fm) {
        Jac.col(i) = (residual_vector(*fp) - residual_vector(*fm)) / (2.0 * h);
      } else if (fp) {
        Jac.col(i) = (residual_vector(*fp) - F) / h;
      } else if (fm) {
        Jac.col(i) = (F - residual_vector(*fm)) / h;
      } else {
        throw Error(ErrorCode::SingularJacobian, "cannot perturb unknown " + std::to_string(i));
      }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Jac);
    qr.setThreshold(1e-12);
    if (qr.rank() < n)
      throw Error(ErrorCode::SingularJacobian,
                  "Jacobian rank " + std::to_string(qr.rank()) + " < " + std::to_string(n));
    const Eigen::VectorXd step = qr.solve(-F);

    const double norm0 = F.norm();
    bool accepted = false;
    for (double lambda = 1.0; lambda > 1e-12; lambda *= 0.5) {
      const Eigen::VectorXd trial = x + lambda * step;
      const auto fam = unknowns.unpack(trial);
      if (!fam) continue;
      const Eigen::VectorXd Ft = residual_vector(*fam);
      if (Ft.norm() < norm0) {
        x = trial;
        F = Ft;
        current = *fam;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw Error(ErrorCode::NoConvergence, "step halving failed to reduce the residual");
  }
}

}  // namespace logspiral
