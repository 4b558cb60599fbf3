#include "logspiral/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "logspiral/constraint.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/field.hpp"
#include "logspiral/geometry.hpp"
#include "logspiral/oracle.hpp"

namespace logspiral {

namespace {

constexpr cplx kI{0.0, 1.0};

// Portable uniform draws; std distributions differ between standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
};

double rel_err(cplx x, cplx ref) {
  const double s = std::abs(ref);
  return s > 0.0 ? std::abs(x - ref) / s : std::abs(x);
}

// Off-sheet sample at relative distance above 1e-6 from every branch.
PolarPoint off_sheet_point(const SpiralFamily& family, Sampler& s, double rlo, double rhi) {
  for (;;) {
    const PolarPoint p{s.log_uniform(rlo, rhi), s.uniform(-4.0 * kPi, 4.0 * kPi)};
    if (!on_sheet(family, p, 1e-6)) return p;
  }
}

class Runner {
 public:
  Runner(const SpiralFamily& family, const VerifyOptions& opts)
      : family_(family), opts_(opts), sampler_(opts.seed) {}

  VerifyReport run() {
    const Suite s = opts_.suite;
    if (s == Suite::All || s == Suite::Winding) winding();
    if (s == Suite::All || s == Suite::Field) field();
    if (s == Suite::All || s == Suite::Matching) matching();
    if (s == Suite::All || s == Suite::Oracle) oracle();
    if (s == Suite::All || s == Suite::Weak) weak();
    if (s == Suite::All || s == Suite::Energy) energy();
    return report_;
  }

 private:
  void record(std::string name, double max_residual, double default_tol) {
    CheckResult c;
    c.name = std::move(name);
    c.max_residual = max_residual;
    c.tolerance = opts_.tol.value_or(default_tol);
    c.status = max_residual <= c.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    report_.checks.push_back(std::move(c));
  }

  void skip(std::string name, double default_tol, std::string note) {
    CheckResult c;
    c.name = std::move(name);
    c.tolerance = opts_.tol.value_or(default_tol);
    c.status = CheckStatus::Skipped;
    c.note = std::move(note);
    report_.checks.push_back(std::move(c));
  }

  // Runs body, recording a failure with an infinite residual if it throws.
  void guarded(const std::string& name, double tol, const std::function<double()>& body) {
    try {
      record(name, body(), tol);
    } catch (const Error& e) {
      record(name, std::numeric_limits<double>::infinity(), tol);
      report_.checks.back().note = e.what();
    }
  }

  void winding() {
    const double a = family_.a();
    const std::size_t M = family_.branches();
    constexpr int kSamples = 20000;
    double bad_def = 0.0, bad_period = 0.0, bad_limits = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const PolarPoint p{sampler_.log_uniform(1e-6, 1e6), sampler_.uniform(-20.0, 20.0)};
      const std::size_t k = sampler_.index(M);
      const double log_r = std::log(p.r);
      const std::int64_t J = winding_number(family_, p, k);
      auto cond = [&](std::int64_t j) {
        return a * (kTwoPi * static_cast<double>(j) + family_.theta(k) - p.theta) + log_r > 0.0;
      };
      if (!cond(J) || cond(J - 1)) bad_def += 1.0;
      const std::int64_t J2 = winding_number(family_, {p.r, p.theta + kTwoPi}, k);
      if (J2 != J + 1) bad_period += 1.0;
    }
    for (int i = 0; i < kSamples / 10; ++i) {
      const std::size_t m = sampler_.index(M);
      const double theta = family_.theta(m) + sampler_.uniform(-10.0, 10.0);
      const SheetPoint sp = sheet_point(family_, m, theta, 1.0);
      const double delta = 1e-9 * std::abs(sp.Z);
      const cplx zl = sp.Z + delta * sp.normal;
      const cplx zr = sp.Z - delta * sp.normal;
      // Keep the unreduced angle of the sheet point so windings compare directly.
      const PolarPoint pl{std::abs(zl), theta + std::arg(zl / sp.Z)};
      const PolarPoint pr{std::abs(zr), theta + std::arg(zr / sp.Z)};
      if (winding_vector(family_, pl) != winding_left(family_, m) ||
          winding_vector(family_, pr) != winding_right(family_, m))
        bad_limits += 1.0;
    }
    record("winding_definition", bad_def, 0.0);
    record("winding_periodicity", bad_period, 0.0);
    record("winding_limits", bad_limits, 0.0);
  }

  void field() {
    const double a = family_.a();
    const cplx ai(a, 1.0);
    const std::size_t M = family_.branches();
    constexpr int kPoints = 2000;
    double forms = 0.0, scaling = 0.0, period = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const PolarPoint p = off_sheet_point(family_, sampler_, 1e-6, 1e6);
      const cplx w = profile_w(family_, p);
      forms = std::max(forms, rel_err(profile_w_simple(family_, p), w));
      const double alpha = sampler_.uniform(-1.0, 1.0);
      const PolarPoint ps{p.r * std::exp(a * alpha), p.theta + alpha};
      scaling = std::max(scaling, rel_err(profile_w(family_, ps), std::exp(ai * alpha) * w));
      period = std::max(period, rel_err(profile_w(family_, {p.r, p.theta + kTwoPi}), w));
    }
    record("field_forms", forms, 1e-13);
    record("field_scaling", scaling, 1e-12);
    record("field_periodicity", period, 1e-12);

    double jump = 0.0, normal = 0.0, density = 0.0, one_sided = 0.0;
    for (int i = 0; i < kPoints / 4; ++i) {
      const std::size_t m = sampler_.index(M);
      const double theta = family_.theta(m) + sampler_.uniform(-8.0, 8.0);
      const SheetPoint sp = sheet_point(family_, m, theta, 1.0);
      const SheetTrace tr = sheet_trace(family_, m, theta, 1.0);
      const cplx formula = (2.0 * a / (a * a + 1.0)) * family_.g(m) *
                           std::exp(a * (theta - family_.theta(m))) * std::polar(1.0, theta) * ai;
      jump = std::max(jump, rel_err(tr.jump, formula));
      const double dz = std::abs(sp.dZ);
      normal = std::max(normal, std::abs(std::real(tr.jump * std::conj(kI * sp.dZ))) /
                                    (std::abs(tr.jump) * dz));
      density = std::max(density, std::abs(std::real(tr.jump * std::conj(sp.dZ)) / dz - sp.gamma) /
                                      std::abs(sp.gamma));
      const double delta = 1e-9 * std::abs(sp.Z);
      const cplx zl = sp.Z + delta * sp.normal;
      const cplx zr = sp.Z - delta * sp.normal;
      const PolarPoint pl{std::abs(zl), theta + std::arg(zl / sp.Z)};
      const PolarPoint pr{std::abs(zr), theta + std::arg(zr / sp.Z)};
      one_sided = std::max({one_sided, rel_err(profile_unchecked(family_, pl).w, tr.w_left),
                            rel_err(profile_unchecked(family_, pr).w, tr.w_right)});
    }
    record("sheet_jump", jump, 1e-12);
    record("sheet_normal", normal, 1e-12);
    record("sheet_density", density, 1e-10);
    record("sheet_one_sided", one_sided, 1e-8);

    guarded("interior_euler", 1e-6, [&] {
      double worst = 0.0;
      for (int i = 0; i < 200; ++i) {
        const PolarPoint p = off_sheet_point(family_, sampler_, 1e-3, 1e3);
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < M; ++k) dist = std::min(dist, distance_to_branch(family_, p, k));
        const double h = std::min(1e-4 * p.r, dist / 5.0);
        const ProfileValue v = profile_unchecked(family_, p);
        const double wn = std::abs(v.w);
        const double scale = std::max({wn, wn * wn / p.r, std::abs(v.q) / p.r});
        worst = std::max(worst, interior_euler_residual(family_, p.to_complex(), h) / scale);
      }
      return worst;
    });
  }

  void matching() {
    const double a = family_.a();
    const std::size_t M = family_.branches();
    const ConstraintReport rep = constraint_report(family_);
    std::vector<MatchingSample> samples;
    for (int i = 0; i < 100; ++i) {
      const std::size_t m = sampler_.index(M);
      samples.push_back({m, family_.theta(m) + sampler_.uniform(-6.0, 6.0)});
    }
    const MatchingResiduals res = matching_residuals(family_, samples);
    double vel = 0.0, pres = 0.0, consistency = 0.0;
    const double c = 2.0 * a * a / (a * a + 1.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const std::size_t m = samples[i].branch;
      vel = std::max(vel, std::abs(res.velocity[i]));
      pres = std::max(pres, std::abs(res.pressure[i]));
      const double ev = rep.velocity_residual[m];
      const double ep = c * rep.pressure_residual[m];
      consistency = std::max({consistency, std::abs(res.velocity[i] - ev) / std::max(1.0, std::abs(ev)),
                              std::abs(res.pressure[i] - ep) / std::max(1.0, std::abs(ep))});
    }
    record("constraint_residual", rep.residual_max(), 1e-10);
    record("matching_velocity", vel, 1e-10);
    record("matching_pressure", pres, 1e-10);
    record("matching_consistency", consistency, 1e-10);
  }

  void oracle() {
    double residue = 0.0;
    for (int i = 0; i < 50; ++i) {
      const PolarPoint p = off_sheet_point(family_, sampler_, 1e-2, 1e2);
      residue = std::max(residue, rel_err(residue_series(family_, p), biot_savart_closed_form(family_, p)));
    }
    record("residue_series", residue, 1e-13);

    if (!compatibility_check(family_).holds) {
      skip("biot_savart", 1e-6, "SKIPPED(CompatibilityViolated)");
      return;
    }
    guarded("biot_savart", 1e-6, [&] {
      double worst = 0.0;
      for (int i = 0; i < 10; ++i) {
        const PolarPoint p = off_sheet_point(family_, sampler_, 0.2, 5.0);
        const cplx w = profile_w(family_, p);
        const auto bs = biot_savart_quadrature(family_, p.to_complex(), 1.0, 1e-8 * std::abs(w));
        worst = std::max(worst, rel_err(bs.velocity, w));
      }
      return worst;
    });
  }

  void weak() {
    guarded("weak_sheet", 1e-3, [&] {
      const auto r = weak_form_residual(family_, std::max<std::size_t>(2, family_.branches()));
      return *std::max_element(r.begin(), r.end());
    });
    guarded("weak_interior", 1e-8, [&] { return weak_form_ratio(family_, interior_test_field(family_), interior_quad_spec()); });
  }

  void energy() {
    const double e1 = energy_in_ball(family_, 1.0);
    const double e2 = energy_in_ball(family_, 2.0);
    record("energy_scaling", std::abs(e2 / (16.0 * e1) - 1.0), 1e-10);

    // Polar midpoint grid over the unit disk.
    constexpr int nr = 400, nt = 800;
    double brute = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double r = (i + 0.5) / nr;
      for (int j = 0; j < nt; ++j) {
        const double th = kTwoPi * (j + 0.5) / nt;
        brute += std::norm(profile_unchecked(family_, {r, th}).w) * r;
      }
    }
    brute *= (1.0 / nr) * (kTwoPi / nt);
    record("energy_cross_check", std::abs(brute / e1 - 1.0), 1e-2);

    // Reversed time: the energy in B(0,1) at s = t0 - t is s^{4mu-2} E(s^{-mu}).
    const double mu = family_.mu();
    auto energy_at = [&](double s) { return std::pow(s, 4.0 * mu - 2.0) * energy_in_ball(family_, std::pow(s, -mu)); };
    const double s0 = 1e-3, s1 = 1e-1;
    const double slope = std::log(energy_at(s1) / energy_at(s0)) / std::log(s1 / s0);
    record("energy_blowup_slope", std::abs(slope + 2.0), 1e-9);
  }

  const SpiralFamily& family_;
  const VerifyOptions& opts_;
  Sampler sampler_;
  VerifyReport report_;
};

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "all") return Suite::All;
  if (name == "winding") return Suite::Winding;
  if (name == "field") return Suite::Field;
  if (name == "matching") return Suite::Matching;
  if (name == "oracle") return Suite::Oracle;
  if (name == "weak") return Suite::Weak;
  if (name == "energy") return Suite::Energy;
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::All: return "all";
    case Suite::Winding: return "winding";
    case Suite::Field: return "field";
    case Suite::Matching: return "matching";
    case Suite::Oracle: return "oracle";
    case Suite::Weak: return "weak";
    case Suite::Energy: return "energy";
  }
  return "all";
}

bool VerifyReport::pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

VerifyReport run_verification(const SpiralFamily& family, const VerifyOptions& opts) {
  return Runner(family, opts).run();
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::json j;
    j["name"] = c.name;
    j["max_residual"] = std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual) : nlohmann::json(nullptr);
    j["tolerance"] = c.tolerance;
    switch (c.status) {
      case CheckStatus::Pass: j["pass"] = true; j["status"] = "PASS"; break;
      case CheckStatus::Fail: j["pass"] = false; j["status"] = "FAIL"; break;
      case CheckStatus::Skipped: j["pass"] = nullptr; j["status"] = c.note.empty() ? "SKIPPED" : c.note; break;
    }
    if (!c.note.empty() && c.status != CheckStatus::Skipped) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return {{"checks", std::move(checks)}, {"pass", report.pass()}};
}

}  // namespace logspiral
