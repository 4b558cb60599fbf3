#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "logspiral/constraint.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/field.hpp"
#include "logspiral/geometry.hpp"
#include "logspiral/model_json.hpp"
#include "logspiral/verification.hpp"

namespace logspiral::cli {

namespace {

struct Bounds {
  double x0, x1, y0, y1;
};

Bounds parse_bounds(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(x))
      throw Error(ErrorCode::InvalidArgument, "bad bounds entry '" + item + "'");
    v.push_back(x);
  }
  if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "bounds need x0,x1,y0,y1");
  if (!(v[0] < v[1]) || !(v[2] < v[3]))
    throw Error(ErrorCode::InvalidArgument, "bounds need x0 < x1 and y0 < y1");
  return {v[0], v[1], v[2], v[3]};
}

nlohmann::json solve_output(const SpiralFamily& family, double residual_max, int iterations) {
  return {{"family", to_json(family)},
          {"residual_max", residual_max},
          {"iterations", iterations},
          {"compat_holds", compatibility_check(family).holds}};
}

int exit_for_solver_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DegenerateDirection:
    case ErrorCode::NoConvergence:
    case ErrorCode::SingularJacobian:
      return kSolver;
    default:
      return kUsage;
  }
}

std::string format_row(double x, double y, double u, double v, double p, long region) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%ld\n", x, y, u, v, p, region);
  return buf;
}

void write_grid(const SpiralFamily& family, double t, const Bounds& b, int nx, int ny,
                std::ostream& os) {
  os << "x,y,u,v,p,region\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double scale = std::pow(t, family.mu());
  for (int j = 0; j < ny; ++j) {
    const double y = ny > 1 ? b.y0 + (b.y1 - b.y0) * j / (ny - 1) : b.y0;
    for (int i = 0; i < nx; ++i) {
      const double x = nx > 1 ? b.x0 + (b.x1 - b.x0) * i / (nx - 1) : b.x0;
      const cplx z(x, y);
      // The origin is the spiral centre, where every branch accumulates.
      if (z == cplx(0.0, 0.0)) {
        os << format_row(x, y, nan, nan, nan, -1);
        continue;
      }
      try {
        const SpacetimeSample s = spacetime_fields(family, z, t);
        const auto region = static_cast<long>(region_index(family, PolarPoint::from_complex(z / scale)));
        os << format_row(x, y, s.v.real(), s.v.imag(), s.p, region);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OnSheet) throw;
        os << format_row(x, y, nan, nan, nan, -1);
      }
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logarithmic-spiral vortex sheets: solve, verify, sample, energy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  auto* solve = app.add_subcommand("solve", "Solve the complex constraint for a family");
  solve->require_subcommand(1);
  auto* alex = solve->add_subcommand("alexander", "Closed-form symmetric family");
  double alex_a = 0.0;
  std::size_t alex_M = 0;
  alex->add_option("--a", alex_a, "Spiral pitch")->required();
  alex->add_option("--M", alex_M, "Number of branches")->required()->check(CLI::PositiveNumber);

  auto* gen = solve->add_subcommand("general", "Damped Gauss-Newton from a config");
  std::string gen_config, gen_free;
  double gen_tol = 1e-12;
  int gen_max_iter = 50;
  gen->add_option("--config", gen_config, "Initial family (JSON)")->required();
  gen->add_option("--free", gen_free, "Comma list of free unknowns: mu,g,gK,theta,thetaK")->required();
  gen->add_option("--tol", gen_tol, "Max residual component");
  gen->add_option("--max-iter", gen_max_iter, "Outer iteration budget");

  auto* verify = app.add_subcommand("verify", "Run numerical verification checks");
  std::string ver_config, ver_suite = "all";
  std::optional<double> ver_tol;
  std::uint64_t ver_seed = 0;
  verify->add_option("--config", ver_config, "Family (JSON)")->required();
  verify->add_option("--suite", ver_suite, "all|winding|field|matching|oracle|weak|energy")
      ->check(CLI::IsMember({"all", "winding", "field", "matching", "oracle", "weak", "energy"}));
  verify->add_option("--tol", ver_tol, "Override every check's tolerance");
  verify->add_option("--seed", ver_seed, "Sampling seed");

  auto* sample = app.add_subcommand("sample", "Sample v and p on a grid to CSV");
  std::string smp_config, smp_bounds, smp_out;
  double smp_t = 1.0;
  int smp_nx = 0, smp_ny = 0;
  sample->add_option("--config", smp_config, "Family (JSON)")->required();
  sample->add_option("--t", smp_t, "Time")->required();
  sample->add_option("--bounds", smp_bounds, "x0,x1,y0,y1")->required()->allow_extra_args(false);
  sample->add_option("--nx", smp_nx, "Nodes along x")->required()->check(CLI::PositiveNumber);
  sample->add_option("--ny", smp_ny, "Nodes along y")->required()->check(CLI::PositiveNumber);
  sample->add_option("--out", smp_out, "Output CSV path")->required();

  auto* energy = app.add_subcommand("energy", "Kinetic energy integral over B(0, r)");
  std::string en_config;
  double en_r = 0.0;
  energy->add_option("--config", en_config, "Family (JSON)")->required();
  energy->add_option("--r", en_r, "Ball radius")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "0.1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*alex) {
      const AlexanderSolution sol = alexander_solve(alex_a, alex_M);
      const ConstraintReport rep = constraint_report(sol.family);
      out << solve_output(sol.family, rep.residual_max(), 0).dump(2) << "\n";
      return kOk;
    }
    if (*gen) {
      const SpiralFamily init = load_family(gen_config);
      const FreeSet free = parse_free_set(gen_free, init.branches());
      const SolveResult res = general_solve(init, free, gen_max_iter, gen_tol);
      out << solve_output(res.family, res.residual_max, res.iterations).dump(2) << "\n";
      return kOk;
    }
    if (*verify) {
      const SpiralFamily fam = load_family(ver_config);
      VerifyOptions opts;
      opts.suite = parse_suite(ver_suite);
      opts.tol = ver_tol;
      opts.seed = ver_seed;
      const VerifyReport rep = run_verification(fam, opts);
      out << to_json(rep).dump(2) << "\n";
      return rep.pass() ? kOk : kVerifyFailed;
    }
    if (*sample) {
      const SpiralFamily fam = load_family(smp_config);
      const Bounds b = parse_bounds(smp_bounds);
      if (!(smp_t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t must be positive");
      std::ostringstream csv;
      write_grid(fam, smp_t, b, smp_nx, smp_ny, csv);
      std::ofstream file(smp_out);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + smp_out + "'");
      file << csv.str();
      if (!file.flush()) throw Error(ErrorCode::InvalidArgument, "write failed for '" + smp_out + "'");
      return kOk;
    }
    if (*energy) {
      const SpiralFamily fam = load_family(en_config);
      if (!(en_r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r must be positive");
      const double E = energy_in_ball(fam, en_r);
      const double r2 = en_r * en_r;
      out << nlohmann::json{{"E", E}, {"C", E / (r2 * r2)}}.dump() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (*alex || *gen) return exit_for_solver_error(e);
    return kUsage;
  }
  return kUsage;
}

}  // namespace logspiral::cli
