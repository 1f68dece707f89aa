#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "twistor/determinant.hpp"
#include "twistor/gauge.hpp"
#include "twistor/verify.hpp"

namespace twistor {

namespace {

const Vec4& radial_direction() {
  static const Vec4 d = Vec4::Constant(0.5);
  return d;
}

Quad closed_form_T(const Quad& r2, const Quad& rho) {
  const Quad pi = boost::math::constants::pi<Quad>();
  return log(1 + r2 / (rho * rho)) / (16 * pi * pi);
}

std::string node_name(const char* prefix, std::size_t i, double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s[i=%zu,r=%.6g]", prefix, i, r);
  return buf;
}

double density_at(const Vec4& x, const TheoremConfig& c) {
  const FieldFunction field = [&](const Vec4& y) { return bpst_connection(y, c.rho, c.eps); };
  return chern_density(curvature(field, x, c.fd_step, c.eps), c.eps);
}

}  // namespace

Quad biharmonic_4d_closed_form(const Vec4& x, double rho, double h) {
  const int half = 4;
  std::vector<Quad> nodes;
  for (int k = -half; k <= half; ++k) nodes.push_back(Quad(h) * k);
  const auto w = fornberg_weights(Quad(0), nodes, 4);
  const Quad rho_q(rho);
  auto T = [&](const std::array<Quad, 4>& y) {
    return closed_form_T(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3], rho_q);
  };
  const std::array<Quad, 4> base{Quad(x(0)), Quad(x(1)), Quad(x(2)), Quad(x(3))};

  Quad sum = 0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int a = 0; a < 2 * half + 1; ++a) {
      auto y = base;
      y[static_cast<std::size_t>(mu)] += nodes[static_cast<std::size_t>(a)];
      sum += w[4][static_cast<std::size_t>(a)] * T(y);
    }
    for (int nu = 0; nu < 4; ++nu) {
      if (nu == mu) continue;
      for (int a = 0; a < 2 * half + 1; ++a)
        for (int b = 0; b < 2 * half + 1; ++b) {
          auto y = base;
          y[static_cast<std::size_t>(mu)] += nodes[static_cast<std::size_t>(a)];
          y[static_cast<std::size_t>(nu)] += nodes[static_cast<std::size_t>(b)];
          sum += w[2][static_cast<std::size_t>(a)] * w[2][static_cast<std::size_t>(b)] * T(y);
        }
    }
  }
  return sum;
}

VerificationReport verify_theorem(const TheoremConfig& c) {
  if (!(c.rho > 0.0)) throw std::invalid_argument("verify_theorem: rho must be positive");
  if (c.r_max < 5.0 * c.rho) throw std::invalid_argument("verify_theorem: r_max must be at least 5 rho");
  if (c.sigma != 1 && c.sigma != -1) throw std::invalid_argument("verify_theorem: sigma must be +1 or -1");
  if (c.order < 1) throw std::invalid_argument("verify_theorem: order must be >= 1");
  if (c.half_width < 1 || c.n < 8 * c.half_width + 2)
    throw std::invalid_argument("verify_theorem: n too small for the stencil and its coarsening");

  const bool series = c.mode == TransgressionMode::series;
  const double tol = c.tolerance > 0.0 ? c.tolerance : (series ? 1e-3 : 1e-6);

  VerificationReport report;
  report.metadata.rho = c.rho;
  report.metadata.r_max = c.r_max;
  report.metadata.n = c.n;
  report.metadata.order = c.order;
  report.metadata.fd_step = c.fd_step;
  report.metadata.seed = c.seed;
  report.config = {{"mode", series ? "series" : "analytic"},
                   {"sigma", c.sigma},
                   {"splice", c.splice},
                   {"half_width", c.half_width},
                   {"tolerance", tol},
                   {"anchor_tolerance", c.anchor_tolerance},
                   {"audit_points", c.audit_points},
                   {"audit_tolerance", c.audit_tolerance}};

  const Quad rho_q(c.rho);
  const double splice_r = c.splice * c.rho;
  std::size_t series_points = 0;
  auto T = [&](const Quad& r) -> Quad {
    const double rd = static_cast<double>(r);
    if (series && rd < splice_r) {
      try {
        ++series_points;
        return Quad(transgression(rd * radial_direction(), c.rho, c.order).value);
      } catch (const std::exception& e) {
        report.add_error(node_name("transgression", series_points, rd), e.what(), "theorem");
      }
    }
    return closed_form_T(r * r, rho_q);
  };

  RadialProfile profile;
  std::vector<Quad> bih;
  try {
    profile = RadialProfile::uniform(c.r_max, c.n, T, "T");
    bih = biharmonic_radial_all(profile, c.half_width);
  } catch (const std::exception& e) {
    report.add_error("biharmonic", e.what(), "theorem");
    return report;
  }

  std::vector<double> lhs(bih.size(), std::nan(""));
  for (std::size_t i = 0; i < bih.size(); ++i) {
    const double r = static_cast<double>(profile.r_values[i]);
    try {
      lhs[i] = density_at(r * radial_direction(), c);
    } catch (const std::exception& e) {
      report.add_error(node_name("density", i, r), e.what(), "theorem");
    }
  }

  const double peak = std::abs(lhs.front());
  const double floor = 1e-12 * peak;
  double worst = 0.0;
  for (std::size_t i = 0; i < bih.size(); ++i) {
    const double r = static_cast<double>(profile.r_values[i]);
    const double rhs = c.sigma * static_cast<double>(bih[i]);
    const double residual = std::abs(lhs[i] - rhs) / std::max(std::abs(lhs[i]), floor);
    if (!(residual <= worst)) worst = residual;
    report.add(node_name("theorem", i, r), lhs[i], rhs, residual, tol, "theorem");
  }

  // r = 0: 6/(π²ρ⁴) against 96/(16π²ρ⁴).
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double rho4 = std::pow(c.rho, 4);
  const double density_closed = 6.0 / (pi2 * rho4);
  const double bih_closed = 96.0 / (16.0 * pi2 * rho4);
  const double bih0 = c.sigma * static_cast<double>(bih.front());
  report.add("anchor_r0", lhs.front(), bih0, std::abs(lhs.front() - bih0) / density_closed, c.anchor_tolerance,
             "theorem");
  report.add("anchor_density_closed_form", lhs.front(), density_closed,
             std::abs(lhs.front() - density_closed) / density_closed, c.anchor_tolerance, "theorem");
  report.add("anchor_biharmonic_closed_form", std::abs(bih0), bih_closed, std::abs(std::abs(bih0) - bih_closed) / bih_closed,
             c.anchor_tolerance, "theorem");

  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.2, 3.0);
  for (int k = 0; k < c.audit_points; ++k) {
    Vec4 x(normal(rng), normal(rng), normal(rng), normal(rng));
    x *= radius(rng) * c.rho / x.norm();
    try {
      const double l = density_at(x, c);
      const double r = c.sigma * static_cast<double>(biharmonic_4d_closed_form(x, c.rho, 0.02 * c.rho));
      report.add("audit_4d[" + std::to_string(k) + "]", l, r, std::abs(l - r) / std::abs(l), c.audit_tolerance,
                 "theorem");
    } catch (const std::exception& e) {
      report.add_error("audit_4d[" + std::to_string(k) + "]", e.what(), "theorem");
    }
  }

  report.results = {{"sigma", c.sigma},
                    {"max_pointwise_residual", number_to_json(worst)},
                    {"interior_points", bih.size()},
                    {"series_points", series_points},
                    {"peak_density", number_to_json(peak)},
                    {"epsilon_floor", number_to_json(floor)}};
  return report;
}

}  // namespace twistor
