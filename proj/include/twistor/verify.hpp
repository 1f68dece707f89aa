#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "twistor/report.hpp"
#include "twistor/spinor.hpp"

namespace twistor {

/// 113-bit binary float. Fourth differences of T in the tail of the grid
/// lose more digits than double has.
using Quad = boost::multiprecision::cpp_bin_float_quad;

enum class Spacing { uniform, tanh_stretched };

/// Samples of a radial function on r_0 = 0 < r_1 < ... < r_{N-1}.
struct RadialProfile {
  std::vector<Quad> r_values;
  std::vector<Quad> samples;
  std::string label;
  Spacing spacing = Spacing::uniform;
  double stretch = 0.0;

  /// r_i = i·r_max/(n - 1)
  static RadialProfile uniform(double r_max, int n, const std::function<Quad(const Quad&)>& f,
                               std::string label = {});
  /// r_i = r_max(1 - tanh(β(1 - s_i))/tanh β), s_i uniform.
  static RadialProfile stretched(double r_max, int n, double beta, const std::function<Quad(const Quad&)>& f,
                                 std::string label = {});

  /// Throws std::invalid_argument on a malformed profile.
  void validate(int min_points = 5) const;
  std::size_t size() const { return r_values.size(); }
};

/// Finite-difference weights for derivatives 0..m at z on arbitrary nodes.
/// weights[k][j] multiplies the value at nodes[j] for the k-th derivative.
std::vector<std::vector<Quad>> fornberg_weights(const Quad& z, const std::vector<Quad>& nodes, int m);

struct StencilOptions {
  /// Points on each side: 2 gives the classic 4th-order 5-point stencil;
  /// the default 4 (9-point, 8th order) is what the theorem tolerances need.
  int half_width = 4;
  bool check_consistency = true;
  double consistency_rel_tol = 1e-3;
};

/// f'' + 3f'/r at every node whose stencil fits; Δf(0) = 4f''(0) by even reflection.
/// The output has size() - half_width entries.
std::vector<Quad> radial_laplacian(const std::vector<Quad>& r, const std::vector<Quad>& f, int half_width);

/// Δ²f at every node where both applications fit (size() - 2·half_width entries).
std::vector<Quad> biharmonic_radial_all(const RadialProfile& profile, int half_width = 4);

/// Δ²f at the grid node r. Compares against the same stencil on the
/// every-other-node subgrid and throws GridTooCoarse if they disagree.
double biharmonic_radial(const RadialProfile& profile, double r, const StencilOptions& options = {});

enum class TransgressionMode { series, analytic };

struct TheoremConfig {
  double rho = 1.0;
  double r_max = 8.0;  // absolute; the standard grid is 8ρ
  int n = 400;
  int order = 30;
  TransgressionMode mode = TransgressionMode::series;
  /// Frozen orientation sign: ch = σ·Δ²T. Fixed by the r = 0 anchor.
  int sigma = -1;
  /// Series inside r < splice·ρ, closed form outside.
  double splice = 0.5;
  int half_width = 4;
  double fd_step = 0.0;
  /// 0 selects 1e-3 for series-T and 1e-6 for analytic-T.
  double tolerance = 0.0;
  double anchor_tolerance = 1e-6;
  /// Off-axis 4D stencil audit points (0 disables).
  int audit_points = 5;
  double audit_tolerance = 1e-5;
  std::uint64_t seed = 20240601;
  Epsilon eps = Epsilon::standard();
};

/// Pointwise |ch - σΔ²T|/max(|ch|, 1e-12·peak) on the interior grid plus the
/// r = 0 anchor and the 4D audit. Sub-errors become failed checks.
VerificationReport verify_theorem(const TheoremConfig& config);

/// Δ²T at a 4D point from 9-point-per-axis Cartesian stencils on the closed form.
Quad biharmonic_4d_closed_form(const Vec4& x, double rho, double h);

struct SuiteConfig {
  std::uint64_t seed = 20240601;
  /// Empty selects nothing; all_groups() selects everything.
  std::set<std::string> groups;
  bool corrupt_epsilon = false;

  static std::set<std::string> all_groups();
  static SuiteConfig defaults(std::uint64_t seed = 20240601);
};

/// Every module's invariants in one deterministic report.
VerificationReport run_identity_suite(const SuiteConfig& config);

}  // namespace twistor
