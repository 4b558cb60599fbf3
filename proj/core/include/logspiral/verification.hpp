#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "logspiral/model.hpp"

namespace logspiral {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;  // reason when skipped
};

enum class Suite { All, Winding, Field, Matching, Oracle, Weak, Energy };

// Throws Error{InvalidArgument} for an unknown name.
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

struct VerifyOptions {
  Suite suite = Suite::All;
  std::optional<double> tol;  // overrides every check's default tolerance
  std::uint64_t seed = 0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;  // skipped checks do not count
};

/// Runs the checks of the selected suite against one family. Point samples
/// are drawn from a generator seeded by opts.seed, so the report is a pure
/// function of (family, opts).
VerifyReport run_verification(const SpiralFamily& family, const VerifyOptions& opts);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace logspiral
