#include "twistor/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace twistor {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json number_to_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

const Check& VerificationReport::add(std::string name, double lhs, double rhs, double residual, double tolerance,
                                     std::string group) {
  Check c;
  c.name = std::move(name);
  c.group = std::move(group);
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = residual;
  c.tolerance = tolerance;
  c.passed = residual <= tolerance;  // false for NaN
  checks_.push_back(std::move(c));
  return checks_.back();
}

const Check& VerificationReport::add_error(std::string name, const std::string& what, std::string group) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Check& c = add(std::move(name), nan, nan, nan, 0.0, std::move(group));
  results["errors"].push_back({{"check", c.name}, {"message", what}});
  return c;
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& c : other.checks_) checks_.push_back(c);
  if (other.results.contains("errors"))
    for (const auto& e : other.results["errors"]) results["errors"].push_back(e);
}

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks_)
    if (!c.passed) ++n;
  return n;
}

double VerificationReport::max_residual(const std::string& prefix) const {
  double worst = 0.0;
  for (const auto& c : checks_) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    if (std::isnan(c.residual)) return c.residual;
    worst = std::max(worst, c.residual);
  }
  return worst;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "twistor.report/1";
  j["metadata"] = {{"rho", number_to_json(metadata.rho)},
                   {"r_max", number_to_json(metadata.r_max)},
                   {"n", metadata.n},
                   {"stretch", number_to_json(metadata.stretch)},
                   {"order", metadata.order},
                   {"fd_step", number_to_json(metadata.fd_step)},
                   {"seed", metadata.seed},
                   {"timestamp", metadata.timestamp}};
  j["config"] = config;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"group", c.group},
                      {"lhs", number_to_json(c.lhs)},
                      {"rhs", number_to_json(c.rhs)},
                      {"residual", number_to_json(c.residual)},
                      {"tolerance", number_to_json(c.tolerance)},
                      {"passed", c.passed}});
  }
  j["checks"] = checks;
  j["results"] = results;
  j["summary"] = {{"total", checks_.size()}, {"failed", failures()}, {"passed", all_passed()}};
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r;
  const auto& m = j.at("metadata");
  r.metadata.rho = number_from_json(m.at("rho"));
  r.metadata.r_max = number_from_json(m.at("r_max"));
  r.metadata.n = m.at("n").get<int>();
  r.metadata.stretch = number_from_json(m.at("stretch"));
  r.metadata.order = m.at("order").get<int>();
  r.metadata.fd_step = number_from_json(m.at("fd_step"));
  r.metadata.seed = m.at("seed").get<std::uint64_t>();
  r.metadata.timestamp = m.at("timestamp").get<std::string>();
  r.config = j.value("config", nlohmann::json::object());
  r.results = j.value("results", nlohmann::json::object());
  for (const auto& c : j.at("checks")) {
    const Check& added = r.add(c.at("name").get<std::string>(), number_from_json(c.at("lhs")),
                               number_from_json(c.at("rhs")), number_from_json(c.at("residual")),
                               number_from_json(c.at("tolerance")), c.value("group", std::string{}));
    if (added.passed != c.at("passed").get<bool>())
      throw std::runtime_error("report: check '" + added.name + "' has passed inconsistent with its residual");
  }
  return r;
}

std::string VerificationReport::to_csv() const {
  std::ostringstream out;
  out << "name,group,lhs,rhs,residual,tolerance,passed\n";
  for (const auto& c : checks_) {
    out << csv_field(c.name) << ',' << csv_field(c.group) << ',' << format_number(c.lhs) << ','
        << format_number(c.rhs) << ',' << format_number(c.residual) << ',' << format_number(c.tolerance) << ','
        << (c.passed ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace twistor
