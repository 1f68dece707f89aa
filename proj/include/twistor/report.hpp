#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace twistor {

struct Check {
  std::string name;
  std::string group;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ReportMetadata {
  double rho = 1.0;
  double r_max = 0.0;
  int n = 0;
  double stretch = 0.0;
  int order = 0;
  double fd_step = 0.0;
  std::uint64_t seed = 0;
  /// Left empty unless the caller supplies one, so reports stay byte-identical.
  std::string timestamp;
};

/// Ordered list of identity checks. passed is always residual ≤ tolerance;
/// a NaN residual fails.
class VerificationReport {
 public:
  ReportMetadata metadata;
  /// Full run configuration, embedded verbatim.
  nlohmann::json config = nlohmann::json::object();
  /// Command-specific results (tables, values).
  nlohmann::json results = nlohmann::json::object();

  const Check& add(std::string name, double lhs, double rhs, double residual, double tolerance,
                   std::string group = {});
  /// Records a sub-computation that threw, as a failed check.
  const Check& add_error(std::string name, const std::string& what, std::string group = {});
  void merge(const VerificationReport& other);

  const std::vector<Check>& checks() const { return checks_; }
  std::size_t failures() const;
  bool all_passed() const { return failures() == 0; }
  /// Largest residual among checks whose name starts with prefix.
  double max_residual(const std::string& prefix) const;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
  /// name,group,lhs,rhs,residual,tolerance,passed
  std::string to_csv() const;

 private:
  std::vector<Check> checks_;
};

/// %.17g, with nan/inf spelled out.
std::string format_number(double v);

/// Numbers as JSON; non-finite values become null.
nlohmann::json number_to_json(double v);
double number_from_json(const nlohmann::json& j);

}  // namespace twistor
