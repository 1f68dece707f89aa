#include "twistor/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "twistor/determinant.hpp"
#include "twistor/gauge.hpp"
#include "twistor/prepotential.hpp"
#include "twistor/verify.hpp"

namespace twistor {

namespace {

using nlohmann::json;

double default_r_max(const RunConfig& c) {
  if (c.r_max) return *c.r_max;
  return (c.command == "charge" ? 100.0 : 8.0) * c.rho;
}

int default_n(const RunConfig& c) {
  if (c.n) return *c.n;
  return c.command == "charge" ? 4000 : 400;
}

/// Default series point sits off every coordinate axis.
Vec4 series_point(const RunConfig& c) {
  if (c.point) return *c.point;
  const double t = c.t.value_or(0.5);
  return std::sqrt(t) * c.rho * Vec4(0.5, -0.5, 0.5, 0.5);
}

json complex_matrix(const Mat2c& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back({number_to_json(m(i, j).real()), number_to_json(m(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

void fill_metadata(VerificationReport& r, const RunConfig& c) {
  r.metadata.rho = c.rho;
  r.metadata.r_max = default_r_max(c);
  r.metadata.n = default_n(c);
  r.metadata.stretch = c.stretch;
  r.metadata.order = c.order;
  r.metadata.fd_step = c.fd_step;
  r.metadata.seed = c.seed;
}

VerificationReport run_series(const RunConfig& c) {
  VerificationReport r;
  const Vec4 x = series_point(c);
  const double t = x.squaredNorm() / (c.rho * c.rho);
  const double norm = 16.0 * std::numbers::pi * std::numbers::pi;
  const double closed = transgression_closed_form(t);
  const SeriesTermTable table = series_table(x, c.rho, c.order);
  json rows = json::array();
  for (std::size_t i = 0; i < table.terms.size(); ++i) {
    const auto [k, term] = table.terms[i];
    const double partial = table.partial_sums[i] / norm;
    rows.push_back({{"k", k},
                    {"term", number_to_json(term / norm)},
                    {"partial_sum", number_to_json(partial)},
                    {"closed_form", number_to_json(closed)},
                    {"residual", number_to_json(std::abs(partial - closed))}});
    if (k <= 10) {
      const double coeff = std::pow(-1.0, k + 1) * std::pow(t, k) / k;
      r.add("series_term[k=" + std::to_string(k) + "]", term, coeff, std::abs(term - coeff), 1e-10, "determinant");
    }
  }
  const double last = table.partial_sums.back() / norm;
  r.add("series_partial_sum", last, closed, std::abs(last - closed), 1e-10, "determinant");
  r.results["t"] = t;
  r.results["closed_form"] = number_to_json(closed);
  r.results["table"] = rows;
  return r;
}

VerificationReport run_theorem(const RunConfig& c) {
  TheoremConfig tc;
  tc.rho = c.rho;
  tc.r_max = default_r_max(c);
  tc.n = default_n(c);
  tc.order = c.order;
  tc.mode = c.mode == "analytic" ? TransgressionMode::analytic : TransgressionMode::series;
  tc.fd_step = c.fd_step;
  tc.seed = c.seed;
  return verify_theorem(tc);
}

VerificationReport run_reconstruct(const RunConfig& c) {
  VerificationReport r;
  const Bridge bridge = instanton_bridge(c.rho);
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> g;
  std::vector<Vec4> points;
  if (c.point) points.push_back(*c.point);
  while (points.size() < 20) points.emplace_back(Vec4(g(rng), g(rng), g(rng), g(rng)) * c.rho);

  std::vector<GaugeField> rec, ref;
  for (const Vec4& x : points) {
    rec.push_back(reconstruct_gauge_field(bridge, x, c.fd_step));
    ref.push_back(bpst_connection(x, c.rho));
  }
  // One constant gauge rotation for all points.
  const Mat2c align = best_fit_conjugation(rec, ref);
  json per_point = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = rec[i].distance(ref[i].conjugated(align));
    r.add("reconstruction[" + std::to_string(i) + "]", 0.0, 0.0, d, 1e-5, "reconstruction");
    per_point.push_back({{"x", {points[i](0), points[i](1), points[i](2), points[i](3)}},
                         {"distance", number_to_json(d)}});
  }
  r.results["alignment"] = complex_matrix(align);
  r.results["points"] = per_point;
  if (c.point) {
    json a = json::array();
    for (const Mat2c& m : rec.front().cartesian()) a.push_back(complex_matrix(m));
    r.results["connection"] = a;
  }
  return r;
}

VerificationReport run_charge(const RunConfig& c) {
  VerificationReport r;
  const ChargeResult q = topological_charge(c.rho, default_r_max(c), default_n(c), c.stretch);
  r.add("topological_charge", q.charge, 1.0, std::abs(q.charge - 1.0), 1e-4, "gauge");
  r.results["charge"] = q.charge;
  return r;
}

VerificationReport run_selftest(const RunConfig& c) {
  SuiteConfig s = SuiteConfig::defaults(c.seed);
  if (!c.groups.empty()) s.groups = {c.groups.begin(), c.groups.end()};
  return run_identity_suite(s);
}

}  // namespace

const std::vector<std::string>& RunConfig::commands() {
  static const std::vector<std::string> names{"series", "verify-theorem", "reconstruct", "charge", "selftest"};
  return names;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    fail("unknown command '" + command + "'");
  if (!(rho > 0.0) || !std::isfinite(rho)) fail("--rho must be positive");
  if (order < 1) fail("--order must be at least 1");
  if (r_max && !(*r_max > 0.0)) fail("--rmax must be positive");
  if (n && *n < 2) fail("--n must be at least 2");
  if (!(stretch >= 0.0)) fail("stretch must be non-negative");
  if (!(fd_step >= 0.0)) fail("--fd-step must be non-negative");
  if (format != "json" && format != "csv") fail("--format must be json or csv");
  if (mode != "series" && mode != "analytic") fail("--mode must be series or analytic");
  if (t && point) fail("--t and --point are exclusive");
  if (t && (!(*t >= 0.0) || !std::isfinite(*t))) fail("--t must be non-negative");
  if (point && !point->allFinite()) fail("--point must be finite");
  if (t && command != "series") fail("--t only applies to series");
  if (!groups.empty() && command != "selftest") fail("--groups only applies to selftest");
  const auto known = SuiteConfig::all_groups();
  for (const auto& g : groups)
    if (!known.contains(g)) fail("unknown group '" + g + "'");
  if (command == "verify-theorem" && default_r_max(*this) < 5.0 * rho) fail("--rmax must be at least 5 rho");
}

json RunConfig::to_json() const {
  json j{{"command", command},
         {"rho", rho},
         {"order", order},
         {"r_max", default_r_max(*this)},
         {"n", default_n(*this)},
         {"stretch", stretch},
         {"fd_step", fd_step},
         {"seed", seed},
         {"format", format},
         {"mode", mode},
         {"groups", groups}};
  j["point"] = point ? json{(*point)(0), (*point)(1), (*point)(2), (*point)(3)} : json(nullptr);
  j["t"] = t ? json(*t) : json(nullptr);
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.rho = j.at("rho").get<double>();
  c.order = j.at("order").get<int>();
  c.r_max = j.at("r_max").get<double>();
  c.n = j.at("n").get<int>();
  c.stretch = j.at("stretch").get<double>();
  c.fd_step = j.at("fd_step").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.format = j.value("format", "json");
  c.mode = j.value("mode", "series");
  c.groups = j.value("groups", std::vector<std::string>{});
  if (j.contains("point") && !j["point"].is_null()) {
    const auto p = j["point"].get<std::vector<double>>();
    if (p.size() != 4) throw std::invalid_argument("point needs four components");
    c.point = Vec4(p[0], p[1], p[2], p[3]);
  }
  if (j.contains("t") && !j["t"].is_null()) c.t = j["t"].get<double>();
  return c;
}

VerificationReport execute(const RunConfig& config) {
  config.validate();
  VerificationReport r;
  try {
    if (config.command == "series") r = run_series(config);
    else if (config.command == "verify-theorem") r = run_theorem(config);
    else if (config.command == "reconstruct") r = run_reconstruct(config);
    else if (config.command == "charge") r = run_charge(config);
    else r = run_selftest(config);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    r.add_error(config.command, e.what(), "cli");
  }
  fill_metadata(r, config);
  json cfg = config.to_json();
  if (!r.config.empty()) cfg["details"] = r.config;
  r.config = cfg;
  return r;
}

std::string render(const VerificationReport& report, const RunConfig& config) {
  if (config.format == "json") {
    json j = report.to_json();
    if (config.command == "charge" && report.results.contains("charge")) j["charge"] = report.results["charge"];
    return j.dump(2) + "\n";
  }
  if (config.command != "series" || !report.results.contains("table")) return report.to_csv();
  std::ostringstream os;
  os << "k,term,partial_sum,closed_form,residual\n";
  for (const auto& row : report.results["table"]) {
    os << row["k"].get<int>();
    for (const char* key : {"term", "partial_sum", "closed_form", "residual"})
      os << ',' << format_number(number_from_json(row[key]));
    os << '\n';
  }
  return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  VerificationReport report;
  try {
    report = execute(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = render(report, config);
  if (config.out) {
    std::ofstream f(*config.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << *config.out << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  for (const auto& c : report.checks())
    if (!c.passed) err << "FAILED " << c.name << ": residual " << format_number(c.residual) << " > " << format_number(c.tolerance) << "\n";
  return report.all_passed() ? 0 : 1;
}

}  // namespace twistor
