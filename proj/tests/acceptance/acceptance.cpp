// One line per acceptance criterion. With arguments, runs only those numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "twistor/determinant.hpp"
#include "twistor/gauge.hpp"
#include "twistor/harmonic.hpp"
#include "twistor/prepotential.hpp"
#include "twistor/verify.hpp"

using namespace twistor;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::mt19937_64 rng_for(int criterion) { return std::mt19937_64(20240601 + criterion); }

Vec4 gaussian_point(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g;
  return Vec4(g(rng), g(rng), g(rng), g(rng)) * scale;
}

const Vec4 kDirection(0.5, -0.5, 0.5, 0.5);

Outcome series_resummation() {
  double worst_sum = 0.0, worst_term = 0.0;
  for (double t : {0.1, 0.25, 0.5}) {
    const SeriesTermTable table = series_table(std::sqrt(t) * kDirection, 1.0, 30);
    const double sum = table.partial_sums.back() / (16.0 * std::numbers::pi * std::numbers::pi);
    worst_sum = std::max(worst_sum, std::abs(sum - transgression_closed_form(t)));
    for (const auto& [k, term] : table.terms)
      if (k <= 10) worst_term = std::max(worst_term, std::abs(term - std::pow(-1.0, k + 1) * std::pow(t, k) / k));
  }
  return {worst_sum < 1e-10 && worst_term < 1e-10,
          fmt("max |S_30 - log(1+t)/16pi^2| = %.2e, max term error (k<=10) = %.2e, tol 1e-10", worst_sum, worst_term)};
}

Outcome theorem_identity() {
  bool ok = true;
  std::string detail;
  for (auto mode : {TransgressionMode::series, TransgressionMode::analytic}) {
    TheoremConfig c;
    c.mode = mode;
    const VerificationReport r = verify_theorem(c);
    const double tol = mode == TransgressionMode::series ? 1e-3 : 1e-6;
    const double pointwise = r.max_residual("theorem[");
    const double anchor = r.max_residual("anchor_r0");
    ok = ok && r.all_passed() && pointwise < tol && anchor < 1e-6;
    detail += mode == TransgressionMode::series ? "series-T: " : "analytic-T: ";
    detail += fmt("max pointwise %.2e (tol %.0e), ", pointwise, tol);
    detail += fmt("anchor %.2e; ", anchor);
  }
  detail += "400-point grid, r_max = 8 rho";
  return {ok, detail};
}

Outcome topological_charge_check() {
  double worst = 0.0, lo = 2.0, hi = 0.0;
  for (double rho : {0.5, 1.0, 2.0}) {
    const double q = topological_charge(rho, 100.0 * rho, 4000).charge;
    worst = std::max(worst, std::abs(q - 1.0));
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {worst <= 1e-4 && hi - lo <= 1e-4,
          fmt("max |Q - 1| = %.2e over rho in {0.5,1,2}, spread %.2e, tol 1e-4", worst, hi - lo)};
}

Outcome reconstruction_check() {
  auto rng = rng_for(4);
  const Bridge bridge = instanton_bridge(1.0);
  std::vector<GaugeField> rec, ref;
  for (int i = 0; i < 20; ++i) {
    const Vec4 x = gaussian_point(rng, 1.0);
    rec.push_back(reconstruct_gauge_field(bridge, x));
    ref.push_back(bpst_connection(x, 1.0));
  }
  const Mat2c g = best_fit_conjugation(rec, ref);
  double worst = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) worst = std::max(worst, rec[i].distance(ref[i].conjugated(g)));
  return {worst < 1e-5, fmt("max component distance after alignment %.2e at 20 points, tol 1e-5", worst)};
}

Outcome flatness_analyticity() {
  auto rng = rng_for(5);
  const Prepotential vpp = instanton_prepotential(1.0);
  const ConjugatePotential vmm = v_minus_minus(instanton_bridge(1.0));
  double flat = 0.0, an = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vec4 x = gaussian_point(rng, 1.0);
    const HarmonicFrame u = HarmonicFrame::random(rng);
    flat = std::max(flat, flatness_residual(vpp.at(x), vmm.at(x), u));
    an = std::max(an, analyticity_residual(vpp, x, u));
  }
  return {flat < 1e-10 && an < 1e-8, fmt("flatness %.2e (tol 1e-10), analyticity %.2e (tol 1e-8) at 50 (x,u)", flat, an)};
}

Outcome variational_identity() {
  auto rng = rng_for(6);
  std::uniform_real_distribution<double> uni(0.05, 0.8);
  double worst = 0.0, worst_full = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double rho = 0.5 + 1.5 * uni(rng);
    Vec4 x = gaussian_point(rng, 1.0);
    x *= uni(rng) * rho / x.norm();
    const VariationResult v = variation_check(x, rho, 1e-5 * rho);
    worst = std::max(worst, v.residual);
    worst_full = std::max(worst_full, v.full_weight_residual);
  }
  return {worst < 1e-6,
          fmt("literal half-weight residual %.2e (tol 1e-6); full-weight form modulo 2x^2/rho^3 closes to %.2e",
              worst, worst_full)};
}

Outcome algebraic_suite() {
  auto rng = rng_for(7);
  std::normal_distribution<double> g;
  auto coeff = [&](int rank) {
    Eigen::MatrixXcd c(rank, rank);
    for (int i = 0; i < rank * rank; ++i) c(i / rank, i % rank) = cdouble(g(rng), g(rng));
    return c;
  };
  const BracketCheck b = commutator_check(8);

  double total = 0.0;
  for (int n = 2; n <= 8; n += 2)
    for (const auto& m : monomials_of(n, -2))
      total = std::max(total, integrate_total_derivative_check(HarmonicPolynomial::monomial(m, coeff(1))));

  double quad = 0.0;
  for (int i = 0; i < 20; ++i) {
    HarmonicPolynomial p(1);
    for (int d = 0; d <= 8; d += 2)
      for (const auto& m : monomials_of(d, 0)) p.add(m, coeff(1));
    quad = std::max(quad, (integrate(p) - sphere_average(p)).norm());
  }

  double inv = 0.0;
  for (int i = 0; i < 20; ++i) {
    HarmonicPolynomial y(2);
    const int q = 2 + 2 * (i % 2);
    for (int d = q; d <= q + 4; d += 2)
      for (const auto& m : monomials_of(d, q)) y.add(m, coeff(2));
    inv = std::max(inv, (apply_D(HarmonicOperator::Dpp, invert_Dpp(y, q + 5)) - y).coefficient_norm());
  }

  double kernel = 0.0;
  for (int i = 0; i < 5; ++i) {
    Vec4 x = gaussian_point(rng, 1.0);
    x *= 0.7 / x.norm();
    const HarmonicPolynomial w = invert_Dpp(instanton_prepotential(1.0).at(x), 8);
    HarmonicPolynomial shifted = w;
    for (const auto& k : dpp_kernel_basis(0, 4)) shifted += k.as_rank(2).right_multiply(coeff(2));
    const HarmonicPolynomial a = fix_zero_mode(w), c = fix_zero_mode(shifted);
    for (int k = 1; k <= 6; ++k) kernel = std::max(kernel, std::abs(trace_power_term(a, k) - trace_power_term(c, k)));
  }

  const bool ok = b.passed() && b.max_residual == 0.0 && total == 0.0 && quad < 1e-6 && inv < 1e-12 && kernel < 1e-10;
  std::string d = fmt("brackets: %.0f monomials, %.0f failures; ", double(b.monomials), double(b.failures));
  d += fmt("int D++f = %.1e; quadrature %.2e; ", total, quad);
  d += fmt("invert round trip %.2e; kernel perturbation %.2e", inv, kernel);
  return {ok, d};
}

Outcome self_duality() {
  auto rng = rng_for(8);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vec4 x = gaussian_point(rng, 1.0);
    const CurvatureTensor f = curvature([](const Vec4& y) { return bpst_connection(y, 1.0); }, x);
    worst = std::max(worst, f.dotted_norm() / f.undotted_norm());
  }
  return {worst < 1e-5, fmt("max |f_dotted|/|f_undotted| = %.2e at 50 points, tol 1e-5", worst)};
}

struct Criterion {
  int number;
  const char* name;
  double time_limit;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "series resummation", 10.0, series_resummation},
      {2, "fourth-order transgression", 60.0, theorem_identity},
      {3, "topological charge", 120.0, topological_charge_check},
      {4, "gauge reconstruction", 120.0, reconstruction_check},
      {5, "flatness and analyticity", 120.0, flatness_analyticity},
      {6, "variational identity", 120.0, variational_identity},
      {7, "algebraic suite", 120.0, algebraic_suite},
      {8, "self-duality", 120.0, self_duality},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  double total = 0.0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.contains(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += dt;
    const bool ok = o.passed && dt < c.time_limit;
    if (!ok) ++failed;
    std::printf("criterion %d %-28s %s  %s  [%.2fs, limit %.0fs]\n", c.number, c.name, ok ? "PASS" : "FAIL",
                o.detail.c_str(), dt, c.time_limit);
  }
  std::printf("total %.2fs\n", total);
  return failed == 0 ? 0 : 1;
}
