#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twistor/report.hpp"
#include "twistor/spinor.hpp"

namespace twistor {

struct RunConfig {
  std::string command = "selftest";  // series | verify-theorem | reconstruct | charge | selftest
  double rho = 1.0;
  std::optional<Vec4> point;
  /// |x|²/ρ²; series only, exclusive with point.
  std::optional<double> t;
  int order = 30;
  /// Unset means the command default: 8ρ for the theorem, 100ρ for the charge.
  std::optional<double> r_max;
  std::optional<int> n;
  double stretch = 4.0;
  double fd_step = 0.0;  // 0 picks a per-routine default
  std::uint64_t seed = 20240601;
  std::string format = "json";
  std::optional<std::string> out;
  std::string mode = "series";  // verify-theorem: series | analytic
  /// selftest; empty runs every group.
  std::vector<std::string> groups;

  static const std::vector<std::string>& commands();

  /// Throws std::invalid_argument.
  void validate() const;
  /// Defaults resolved, so the result alone reproduces the run. Omits out.
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

/// Runs the command; its checks decide the exit status.
VerificationReport execute(const RunConfig& config);

/// Report in the configured format. The series command's CSV is its term table.
std::string render(const VerificationReport& report, const RunConfig& config);

/// validate, execute, render, write to config.out or to `out`.
/// 0 when every check passed, 1 otherwise, 2 on a bad configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace twistor
