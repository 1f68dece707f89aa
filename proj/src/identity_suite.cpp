#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "twistor/determinant.hpp"
#include "twistor/gauge.hpp"
#include "twistor/harmonic.hpp"
#include "twistor/prepotential.hpp"
#include "twistor/verify.hpp"

namespace twistor {

std::set<std::string> SuiteConfig::all_groups() {
  return {"spinor", "algebra", "gauge", "prepotential", "reconstruction", "determinant", "variation", "theorem"};
}

SuiteConfig SuiteConfig::defaults(std::uint64_t seed) {
  SuiteConfig c;
  c.seed = seed;
  c.groups = all_groups();
  return c;
}

namespace {

std::string short_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct Context {
  std::mt19937_64 rng;
  Epsilon eps;
  VerificationReport& report;

  Vec4 point(double scale) {
    std::normal_distribution<double> g;
    return Vec4(g(rng), g(rng), g(rng), g(rng)) * scale;
  }
  Vec4 point_in_ball(double radius) {
    Vec4 x = point(1.0);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    return x / x.norm() * radius * u(rng);
  }
  HarmonicFrame frame() { return HarmonicFrame::random(rng); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

  // Worst case over samples recorded as one check.
  void worst(const std::string& name, const std::string& group, double tol, int samples,
             const std::function<std::array<double, 3>(int)>& f) {
    double lhs = 0.0, rhs = 0.0, res = 0.0;
    try {
      for (int i = 0; i < samples; ++i) {
        const auto [l, r, e] = f(i);
        if (!(e <= res)) {
          lhs = l;
          rhs = r;
          res = e;
        }
      }
      report.add(name, lhs, rhs, res, tol, group);
    } catch (const std::exception& e) {
      report.add_error(name, e.what(), group);
    }
  }
};

void spinor_group(Context& c) {
  const std::string g = "spinor";
  c.worst("spinor_xplus_xplus_zero", g, 1e-13, 100, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(1.0);
    const HarmonicFrame u = c.frame();
    const Bispinor b = to_bispinor(x);
    const cdouble v = contract(project(b, u, Chirality::plus, false, c.eps), project(b, u, Chirality::plus, true, c.eps));
    return {std::abs(v), 0.0, std::abs(v) / x.squaredNorm()};
  });
  c.worst("spinor_xplus_xminus_norm", g, 1e-13, 100, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(1.0);
    const HarmonicFrame u = c.frame();
    const Bispinor b = to_bispinor(x);
    const cdouble v = contract(project(b, u, Chirality::plus, false, c.eps), project(b, u, Chirality::minus, true, c.eps));
    return {v.real(), x.squaredNorm(), std::abs(v - x.squaredNorm()) / x.squaredNorm()};
  });
  c.worst("spinor_reality", g, 1e-13, 100, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(1.0);
    const HarmonicFrame u = c.frame();
    const Bispinor b = to_bispinor(x);
    const Spinor xp = project(b, u, Chirality::plus, false, c.eps);
    const Spinor xm = project(b, u, Chirality::minus, true, c.eps);
    return {xp.norm(), xm.norm(), (xp.conjugate() - xm).norm() / x.norm()};
  });
  c.worst("spinor_raise_lower_roundtrip", g, 0.0, 16, [&](int i) -> std::array<double, 3> {
    Spinor s = Spinor::Zero();
    s(i % 2) = 1.0;
    const auto kind = (i / 2) % 2 == 0 ? IndexKind::dotted : IndexKind::undotted;
    const auto chir = (i / 4) % 2 == 0 ? Chirality::plus : Chirality::minus;
    const Spinor back = (i / 8) == 0 ? raise_index(lower_index(s, kind, chir, c.eps), kind, chir, c.eps)
                                     : lower_index(raise_index(s, kind, chir, c.eps), kind, chir, c.eps);
    return {1.0, back.norm(), (back - s).norm()};
  });
  c.worst("spinor_frame_normalization", g, 1e-14, 100, [&](int) -> std::array<double, 3> {
    const HarmonicFrame u = c.frame();
    return {0.0, 0.0, std::max(u.normalization_residual(c.eps), u.reality_residual(c.eps))};
  });
}

HarmonicPolynomial random_charge0(Context& c, int max_pairs) {
  std::uniform_int_distribution<int> pairs(0, max_pairs);
  std::normal_distribution<double> g;
  HarmonicPolynomial p(1);
  for (int t = 0; t < 4; ++t) {
    const auto ms = monomials_of(2 * pairs(c.rng), 0);
    const auto& m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(c.rng)];
    p.add(m, Eigen::MatrixXcd::Constant(1, 1, cdouble(g(c.rng), g(c.rng))));
  }
  return p;
}

void algebra_group(Context& c) {
  const std::string g = "algebra";
  try {
    const BracketCheck b = commutator_check(8);
    c.report.add("algebra_sl2_brackets_deg8", static_cast<double>(b.monomials), static_cast<double>(b.failures),
                 b.max_residual, 0.0, g);
  } catch (const std::exception& e) {
    c.report.add_error("algebra_sl2_brackets_deg8", e.what(), g);
  }
  c.worst("algebra_total_derivative_exact", g, 0.0, 1, [&](int) -> std::array<double, 3> {
    double worst = 0.0;
    for (int n = 2; n <= 8; n += 2)
      for (const auto& m : monomials_of(n, -2)) worst = std::max(worst, integrate_total_derivative_check(HarmonicPolynomial::monomial(m)));
    return {0.0, 0.0, worst};
  });
  c.worst("algebra_integral_vs_sphere_quadrature", g, 1e-6, 20, [&](int) -> std::array<double, 3> {
    const HarmonicPolynomial p = random_charge0(c, 4);
    const cdouble a = integrate(p)(0, 0);
    const cdouble q = sphere_average(p)(0, 0);
    return {a.real(), q.real(), std::abs(a - q)};
  });
  c.worst("algebra_invert_dpp_roundtrip", g, 1e-12, 20, [&](int i) -> std::array<double, 3> {
    std::normal_distribution<double> n;
    const int q = 2 + 2 * (i % 2);
    HarmonicPolynomial y(2);
    for (int d = q; d <= q + 4; d += 2)
      for (const auto& m : monomials_of(d, q)) {
        Eigen::MatrixXcd co(2, 2);
        for (int e = 0; e < 4; ++e) co(e / 2, e % 2) = cdouble(n(c.rng), n(c.rng));
        y.add(m, co);
      }
    const HarmonicPolynomial x = invert_Dpp(y, q + 5);
    return {y.coefficient_norm(), 0.0, (apply_D(HarmonicOperator::Dpp, x) - y).coefficient_norm()};
  });
}

void gauge_group(Context& c) {
  const std::string g = "gauge";
  const double rhos[3] = {0.5, 1.0, 2.0};
  c.worst("gauge_self_duality", g, 1e-5, 50, [&](int i) -> std::array<double, 3> {
    const double rho = rhos[i % 3];
    const Vec4 x = c.point(rho);
    const CurvatureTensor f =
        curvature([&](const Vec4& y) { return bpst_connection(y, rho, c.eps); }, x, 0.0, c.eps);
    return {f.dotted_norm(), f.undotted_norm(), f.dotted_norm() / f.undotted_norm()};
  });
  c.worst("gauge_algebra", g, 1e-12, 50, [&](int) -> std::array<double, 3> {
    return {0.0, 0.0, bpst_connection(c.point(1.0), 1.0, c.eps).algebra_residual()};
  });
  c.worst("gauge_covariance", g, 1e-10, 10, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(1.0);
    const HarmonicFrame q = c.frame();
    Mat2c rot;
    rot << q.u_plus()(0), -std::conj(q.u_plus()(1)), q.u_plus()(1), std::conj(q.u_plus()(0));
    const double d0 = chern_density(curvature([&](const Vec4& y) { return bpst_connection(y, 1.0, c.eps); }, x, 0.0, c.eps), c.eps);
    const double d1 = chern_density(
        curvature([&](const Vec4& y) { return bpst_connection(y, 1.0, c.eps).conjugated(rot); }, x, 0.0, c.eps), c.eps);
    return {d0, d1, std::abs(d0 - d1) / std::abs(d0)};
  });
  for (double rho : rhos) {
    c.worst("gauge_topological_charge[rho=" + format_number(rho) + "]", g, 1e-4, 1, [&](int) -> std::array<double, 3> {
      const double q = topological_charge(rho, 100.0 * rho, 4000, 4.0, c.eps).charge;
      return {q, 1.0, std::abs(q - 1.0)};
    });
  }
}

void prepotential_group(Context& c) {
  const std::string g = "prepotential";
  const double rho = 1.0;
  const Prepotential vpp = instanton_prepotential(rho, c.eps);
  const Bridge bridge = instanton_bridge(rho, c.eps);
  const ConjugatePotential vmm = v_minus_minus(bridge);
  c.worst("prepotential_flatness", g, 1e-10, 50, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(rho);
    const double r = flatness_residual(vpp.at(x), vmm.at(x), c.frame());
    return {r, 0.0, r};
  });
  c.worst("prepotential_analyticity", g, 1e-8, 50, [&](int) -> std::array<double, 3> {
    const double r = analyticity_residual(vpp, c.point(rho), c.frame());
    return {r, 0.0, r};
  });
  c.worst("prepotential_bridge_consistency", g, 1e-10, 50, [&](int) -> std::array<double, 3> {
    const double r = bridge_residual(bridge, vpp, c.point(rho), c.frame());
    return {r, 0.0, r};
  });
  c.worst("prepotential_proof_chain", g, 1e-6, 20, [&](int) -> std::array<double, 3> {
    const double r = proof_chain_residual(vpp, vmm, c.point(rho), c.frame());
    return {r, 0.0, r};
  });
  c.worst("prepotential_covariant_constancy", g, 1e-5, 10, [&](int) -> std::array<double, 3> {
    const double r = covariant_constancy_residual(vpp, vmm, c.point(rho), c.frame());
    return {r, 0.0, r};
  });
  c.worst("prepotential_bianchi", g, 1e-5, 3, [&](int) -> std::array<double, 3> {
    double scale = 0.0;
    const double r = bianchi_residual(vmm, c.point(rho), c.frame(), 0.0, &scale);
    return {r, scale, r / std::max(scale, 1e-300)};
  });
  c.worst("prepotential_curvature_u_independence", g, 1e-6, 5, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(rho);
    const auto a = curvature_from_prepotential(vmm, x, c.frame());
    const auto b = curvature_from_prepotential(vmm, x, c.frame());
    double d = 0.0, s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        d = std::max(d, (a.central[i][j] - b.central[i][j]).norm());
        s = std::max(s, a.central[i][j].norm());
      }
    return {s, d, d / s};
  });
  c.worst("prepotential_curvature_vs_gauge", g, 1e-4, 20, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point(rho);
    const auto p = curvature_from_prepotential(vmm, x, c.frame());
    const CurvatureTensor f = curvature([&](const Vec4& y) { return bpst_connection(y, rho, c.eps); }, x, 0.0, c.eps);
    // Central-frame curvature is the BPST one conjugated by the constant ε.
    const Mat2c e = Epsilon::standard().undotted_lower;
    double d = 0.0, s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        d = std::max(d, (p.central[i][j] - e * f.f_undotted[i][j] * e.inverse()).norm());
        s = std::max(s, f.f_undotted[i][j].norm());
      }
    return {s, d, d / s};
  });
}

void reconstruction_group(Context& c) {
  const std::string g = "reconstruction";
  const double rho = 1.0;
  const Bridge bridge = instanton_bridge(rho, c.eps);
  std::vector<GaugeField> rec, ref;
  try {
    for (int i = 0; i < 20; ++i) {
      const Vec4 x = c.point(rho);
      rec.push_back(reconstruct_gauge_field(bridge, x));
      ref.push_back(bpst_connection(x, rho, Epsilon::standard()));
    }
    const Mat2c gfit = best_fit_conjugation(rec, ref);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      worst = std::max(worst, rec[i].distance(ref[i].conjugated(gfit)));
      for (const auto& row : ref[i].components)
        for (const auto& m : row) scale = std::max(scale, m.norm());
    }
    c.report.add("reconstruction_vs_bpst_aligned", scale, worst, worst, 1e-5, g);
  } catch (const std::exception& e) {
    c.report.add_error("reconstruction_vs_bpst_aligned", e.what(), g);
  }
}

void determinant_group(Context& c) {
  const std::string g = "determinant";
  for (double t : {0.1, 0.25, 0.5}) {
    const Vec4 x = std::sqrt(t) * Vec4(0.5, -0.5, 0.5, 0.5);
    const std::string tag = "[t=" + short_number(t) + "]";
    try {
      const SeriesTermTable table = series_table(x, 1.0, 30);
      double worst = 0.0;
      for (const auto& [k, v] : table.terms) {
        if (k > 10) break;
        worst = std::max(worst, std::abs(v - std::pow(-1.0, k + 1) * std::pow(t, k) / k));
      }
      c.report.add("determinant_terms_k10" + tag, table.terms[9].second, std::pow(-1.0, 11) * std::pow(t, 10) / 10,
                   worst, 1e-10, g);
      const double sum = table.partial_sums.back() / (16.0 * std::numbers::pi * std::numbers::pi);
      const double closed = transgression_closed_form(t);
      c.report.add("determinant_partial_sum_K30" + tag, sum, closed, std::abs(sum - closed), 1e-10, g);
    } catch (const std::exception& e) {
      c.report.add_error("determinant_series" + tag, e.what(), g);
    }
  }
  c.worst("determinant_kernel_independence", g, 1e-10, 5, [&](int) -> std::array<double, 3> {
    const Vec4 x = c.point_in_ball(0.8);
    const HarmonicPolynomial v = instanton_prepotential(1.0).at(x);
    const HarmonicPolynomial w0 = invert_Dpp(v, 8);
    HarmonicPolynomial perturbed = w0;
    std::normal_distribution<double> n;
    for (const auto& k : dpp_kernel_basis(0, 4)) {
      Eigen::MatrixXcd co(2, 2);
      for (int e = 0; e < 4; ++e) co(e / 2, e % 2) = cdouble(n(c.rng), n(c.rng));
      perturbed += k.as_rank(2).right_multiply(co);
    }
    const HarmonicPolynomial a = fix_zero_mode(w0);
    const HarmonicPolynomial b = fix_zero_mode(perturbed);
    double worst = 0.0, ref = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const double ta = trace_power_term(a, k);
      worst = std::max(worst, std::abs(ta - trace_power_term(b, k)));
      ref = std::max(ref, std::abs(ta));
    }
    return {ref, 0.0, worst};
  });
}

void variation_group(Context& c) {
  const std::string g = "variation";
  double worst = 0.0, worst_full = 0.0, lhs = 0.0, rhs = 0.0;
  bool sign_ok = true;
  try {
    for (int i = 0; i < 10; ++i) {
      const double rho = c.uniform(0.5, 2.0);
      const Vec4 x = c.point_in_ball(0.8 * rho);
      const VariationResult v = variation_check(x, rho, 1e-5 * rho);
      if (!(v.residual <= worst)) {
        worst = v.residual;
        lhs = v.lhs;
        rhs = v.rhs;
      }
      worst_full = std::max(worst_full, v.full_weight_residual);
      sign_ok = sign_ok && v.lhs < 0.0;
    }
    // Literal form; see the README for why this one cannot close.
    c.report.add("variation_literal_half_weight", lhs, rhs, worst, 1e-6, g);
    c.report.add("variation_full_weight_modulo_biharmonic", 0.0, 0.0, worst_full, 1e-6, g);
    c.report.add("variation_lhs_negative", sign_ok ? 1.0 : 0.0, 1.0, sign_ok ? 0.0 : 1.0, 0.0, g);
  } catch (const std::exception& e) {
    c.report.add_error("variation", e.what(), g);
  }
}

void theorem_group(Context& c) {
  for (auto mode : {TransgressionMode::series, TransgressionMode::analytic}) {
    const std::string tag = mode == TransgressionMode::series ? "series" : "analytic";
    try {
      TheoremConfig tc;
      tc.mode = mode;
      tc.eps = c.eps;
      tc.seed = c.rng();
      const VerificationReport r = verify_theorem(tc);
      const double tol = mode == TransgressionMode::series ? 1e-3 : 1e-6;
      c.report.add("theorem_pointwise_" + tag, 0.0, 0.0, r.max_residual("theorem["), tol, "theorem");
      c.report.add("theorem_anchor_" + tag, 0.0, 0.0, r.max_residual("anchor_"), 1e-6, "theorem");
      c.report.add("theorem_audit_4d_" + tag, 0.0, 0.0, r.max_residual("audit_4d"), 1e-5, "theorem");
      for (const auto& chk : r.checks())
        if (chk.name.rfind("error", 0) == 0 || std::isnan(chk.residual))
          c.report.add_error("theorem_" + tag + ":" + chk.name, "sub-check failed to evaluate", "theorem");
    } catch (const std::exception& e) {
      c.report.add_error("theorem_" + tag, e.what(), "theorem");
    }
  }
}

}  // namespace

VerificationReport run_identity_suite(const SuiteConfig& config) {
  VerificationReport report;
  report.metadata.seed = config.seed;
  report.config = {{"seed", config.seed},
                   {"groups", std::vector<std::string>(config.groups.begin(), config.groups.end())},
                   {"corrupt_epsilon", config.corrupt_epsilon}};
  Context c{std::mt19937_64(config.seed), config.corrupt_epsilon ? Epsilon::corrupted() : Epsilon::standard(),
            report};

  // Each group reseeds, so its stream does not depend on which others run.
  const std::vector<std::pair<std::string, void (*)(Context&)>> groups{
      {"spinor", spinor_group},           {"algebra", algebra_group},
      {"gauge", gauge_group},             {"prepotential", prepotential_group},
      {"reconstruction", reconstruction_group}, {"determinant", determinant_group},
      {"variation", variation_group},     {"theorem", theorem_group}};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& [name, run] = groups[i];
    if (!config.groups.contains(name)) continue;
    c.rng.seed(config.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    run(c);
  }
  return report;
}

}  // namespace twistor
