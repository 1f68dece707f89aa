#include "twistor/determinant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twistor/errors.hpp"
#include "twistor/numerics.hpp"
#include "twistor/prepotential.hpp"

namespace twistor {

namespace {

constexpr double kSixteenPiSquared = 16.0 * std::numbers::pi * std::numbers::pi;

}  // namespace

HarmonicPolynomial fix_zero_mode(const HarmonicPolynomial& preimage) {
  const int r = preimage.rank();
  HarmonicPolynomial traceless = preimage.canonical() - HarmonicPolynomial::constant(integrate(preimage));
  traceless = traceless.canonical();
  // A traceless 2×2 block squares to ½tr(W̃²)·1, so λ² = ½∫tr W̃².
  const HarmonicPolynomial half_square = ((traceless * traceless).trace() * cdouble(0.5)).canonical();
  const cdouble lambda2 = integrate(half_square)(0, 0);
  const HarmonicPolynomial varying = half_square - HarmonicPolynomial::identity(1, lambda2);
  if (varying.coefficient_norm() > 1e-10 * std::max(1.0, std::abs(lambda2)))
    throw ZeroModeAmbiguous("fix_zero_mode: traceless part does not square to a constant");
  cdouble lambda = std::sqrt(lambda2);
  if (lambda.real() < 0.0) lambda = -lambda;
  return traceless + HarmonicPolynomial::identity(r, lambda);
}

HarmonicPolynomial dpp_preimage(const Vec4& x, double rho, int max_degree) {
  const HarmonicPolynomial v = instanton_prepotential(rho).at(x);
  return fix_zero_mode(invert_Dpp(v, max_degree));
}

namespace {

double integrate_trace(const HarmonicPolynomial& power) {
  const HarmonicPolynomial tr = power.trace();
  const auto q = tr.charge();
  if (q && *q != 0) throw ChargeMismatch("series term integrand must have charge 0");
  return integrate(tr)(0, 0).real();
}

double sign_over_k(int k) { return (k % 2 == 1 ? 1.0 : -1.0) / k; }

}  // namespace

double trace_power_term(const HarmonicPolynomial& w, int k) {
  if (k < 1) throw std::invalid_argument("trace_power_term: k must be >= 1");
  HarmonicPolynomial power = w;
  for (int i = 1; i < k; ++i) power = (power * w).canonical();
  return sign_over_k(k) * integrate_trace(power);
}

double series_term(int k, const Vec4& x, double rho, int max_degree) {
  if (k < 1) throw std::invalid_argument("series_term: k must be >= 1");
  if (max_degree <= 0) max_degree = 2 * k + 2;
  if (max_degree < 2 * k + 2) throw std::invalid_argument("series_term: max_degree must be >= 2k + 2");
  return trace_power_term(dpp_preimage(x, rho, max_degree), k);
}

SeriesTermTable series_table(const Vec4& x, double rho, int order) {
  if (order < 1) throw std::invalid_argument("series_table: order must be >= 1");
  SeriesTermTable table;
  table.rho = rho;
  table.x = x;
  const HarmonicPolynomial w = dpp_preimage(x, rho, 2 * order + 2);
  HarmonicPolynomial power = w;
  numerics::CompensatedSum<double> sum;
  for (int k = 1; k <= order; ++k) {
    if (k > 1) power = (power * w).canonical();
    const double term = sign_over_k(k) * integrate_trace(power);
    sum += term;
    table.terms.emplace_back(k, term);
    table.partial_sums.push_back(sum.value());
  }
  return table;
}

double transgression_closed_form(double t) { return std::log1p(t) / kSixteenPiSquared; }

TransgressionResult transgression(const Vec4& x, double rho, int order) {
  if (!(rho > 0.0)) throw std::invalid_argument("transgression: rho must be positive");
  if (order < 1) throw std::invalid_argument("transgression: order must be >= 1");
  const double t = x.squaredNorm() / (rho * rho);
  TransgressionResult out;
  out.closed_form = transgression_closed_form(t);
  out.order = order;
  if (t >= 1.0) {
    out.value = out.closed_form;
    out.analytic_continuation = true;
    return out;
  }
  const SeriesTermTable table = series_table(x, rho, order);
  out.last_term = table.terms.back().second;
  const double partial = table.partial_sums.back();
  out.value = partial / kSixteenPiSquared;
  out.convergence_warning = std::abs(out.last_term) > 1e-12 * std::abs(partial);
  return out;
}

VariationResult variation_check(const Vec4& x, double rho, double delta_rho, int order) {
  if (!(delta_rho > 0.0) || delta_rho >= rho) throw std::invalid_argument("variation_check: need 0 < delta_rho < rho");
  VariationResult out;
  const double tp = transgression(x, rho + delta_rho, order).value;
  const double tm = transgression(x, rho - delta_rho, order).value;
  out.lhs = kSixteenPiSquared * (tp - tm) / (2.0 * delta_rho);

  const HarmonicPolynomial vpp = instanton_prepotential(rho).at(x);
  const HarmonicPolynomial vmm = v_minus_minus(instanton_bridge(rho)).at(x);
  const HarmonicPolynomial dvpp = vpp * cdouble(-2.0 / rho);
  out.full_weight_rhs = integrate((dvpp * vmm).trace())(0, 0).real();
  out.rhs = 0.5 * out.full_weight_rhs;
  out.residual = std::abs(out.lhs - out.rhs);
  out.biharmonic_term = 2.0 * x.squaredNorm() / (rho * rho * rho);
  out.full_weight_residual = std::abs(out.lhs + out.biharmonic_term - out.full_weight_rhs);
  return out;
}

}  // namespace twistor
