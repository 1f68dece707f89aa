#include "twistor/prepotential.hpp"

#include <cmath>
#include <stdexcept>

#include "twistor/errors.hpp"

namespace twistor {

namespace {

using Gradient = std::array<HarmonicPolynomial, 4>;
using Hessian = std::array<std::array<HarmonicPolynomial, 4>, 4>;
using MultiField = std::function<std::vector<HarmonicPolynomial>(const Vec4&)>;

double distance(const HarmonicPolynomial& a, const HarmonicPolynomial& b) { return (a - b).coefficient_norm(); }

void check_rho(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
}

Gradient empty_gradient(int rank) {
  return {HarmonicPolynomial(rank), HarmonicPolynomial(rank), HarmonicPolynomial(rank), HarmonicPolynomial(rank)};
}

Vec4 unit(int mu, double h) {
  Vec4 e = Vec4::Zero();
  e(mu) = h;
  return e;
}

// Central-difference gradients of several polynomial fields sharing evaluations.
std::vector<Gradient> multi_gradient_at_step(const MultiField& f, const Vec4& x, double h) {
  std::vector<Gradient> out;
  for (int mu = 0; mu < 4; ++mu) {
    const auto plus = f(x + unit(mu, h));
    const auto minus = f(x - unit(mu, h));
    if (out.empty()) out.resize(plus.size(), empty_gradient(plus.front().rank()));
    for (std::size_t k = 0; k < plus.size(); ++k) out[k][mu] = (plus[k] - minus[k]) * cdouble(0.5 / h);
  }
  return out;
}

std::vector<Gradient> multi_gradient(const MultiField& f, const Vec4& x, double h, double rel_tol) {
  const auto coarse = multi_gradient_at_step(f, x, h);
  const auto fine = multi_gradient_at_step(f, x, 0.5 * h);
  std::vector<Gradient> out(coarse.size(), empty_gradient(coarse.front()[0].rank()));
  double err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    for (int mu = 0; mu < 4; ++mu) {
      out[k][mu] = (fine[k][mu] * cdouble(4.0) - coarse[k][mu]) * cdouble(1.0 / 3.0);
      err = std::max(err, distance(fine[k][mu], coarse[k][mu]));
      scale = std::max(scale, fine[k][mu].coefficient_norm());
    }
  }
  if (err > rel_tol * scale)
    throw StepTooLarge("polynomial_gradient: Richardson estimates disagree by " + std::to_string(err));
  return out;
}

Hessian hessian_at_step(const PolynomialField& p, const Vec4& x, double h) {
  Hessian out{empty_gradient(1), empty_gradient(1), empty_gradient(1), empty_gradient(1)};
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      const Vec4 a = unit(mu, h), b = unit(nu, h);
      HarmonicPolynomial d = p(x + a + b) - p(x + a - b) - p(x - a + b) + p(x - a - b);
      d *= cdouble(0.25 / (h * h));
      out[mu][nu] = d;
      out[nu][mu] = d;
    }
  }
  return out;
}

// Scalar generator polynomial u^{±β̇}.
HarmonicPolynomial frame_generator(Chirality chirality, int dotted) {
  return HarmonicPolynomial::generator((chirality == Chirality::plus ? 0 : 2) + dotted);
}

}  // namespace

std::array<HarmonicPolynomial, 2> harmonic_projection(const Vec4& x, Chirality chirality, bool upper,
                                                      const Epsilon& eps) {
  const Bispinor b = to_bispinor(x);
  // Coefficient of u^{±γ̇} in component α.
  Mat2c coeff;
  if (upper) {
    coeff = chirality == Chirality::plus ? Mat2c(b.entries * eps.dotted_lower)
                                         : Mat2c(b.entries * eps.dotted_lower.transpose());
  } else {
    coeff = b.lowered(eps);
  }
  std::array<HarmonicPolynomial, 2> out{HarmonicPolynomial(1), HarmonicPolynomial(1)};
  for (int al = 0; al < 2; ++al)
    for (int g = 0; g < 2; ++g) out[al] += frame_generator(chirality, g) * coeff(al, g);
  return out;
}

HarmonicPolynomial outer_product(const std::array<HarmonicPolynomial, 2>& column,
                                 const std::array<HarmonicPolynomial, 2>& row) {
  HarmonicPolynomial out(2);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const HarmonicPolynomial s = column[j] * row[i];
      Eigen::MatrixXcd unit_ji = Eigen::MatrixXcd::Zero(2, 2);
      unit_ji(j, i) = 1.0;
      for (const auto& [m, c] : s.terms()) out.add(m, c(0, 0) * unit_ji);
    }
  }
  return out;
}

HarmonicPolynomial Prepotential::at(const Vec4& x) const {
  const auto up = harmonic_projection(x, Chirality::plus, true, eps);
  const auto low = harmonic_projection(x, Chirality::plus, false, eps);
  return outer_product(up, low) * cdouble(-1.0 / (rho * rho));
}

HarmonicPolynomial Bridge::at(const Vec4& x) const {
  const double t = x.squaredNorm() / (rho * rho);
  const auto up = harmonic_projection(x, Chirality::plus, true, eps);
  const auto low = harmonic_projection(x, Chirality::minus, false, eps);
  HarmonicPolynomial u = HarmonicPolynomial::identity(2) + outer_product(up, low) * cdouble(1.0 / (rho * rho));
  return u * cdouble(1.0 / std::sqrt(1.0 + t));
}

HarmonicPolynomial Bridge::inverse_at(const Vec4& x) const {
  const double t = x.squaredNorm() / (rho * rho);
  const auto up = harmonic_projection(x, Chirality::plus, true, eps);
  const auto low = harmonic_projection(x, Chirality::minus, false, eps);
  // N² = t N modulo u⁺u⁻ = 1, so (1 + N)⁻¹ = 1 - N/(1 + t).
  HarmonicPolynomial n = outer_product(up, low) * cdouble(1.0 / (rho * rho));
  HarmonicPolynomial inv = HarmonicPolynomial::identity(2) - n * cdouble(1.0 / (1.0 + t));
  return inv * cdouble(std::sqrt(1.0 + t));
}

HarmonicPolynomial bridge_potential(const Bridge& bridge, const Vec4& x, HarmonicOperator op) {
  if (op == HarmonicOperator::D0) throw std::invalid_argument("bridge_potential: use Dpp or Dmm");
  return (-(apply_D(op, bridge.at(x)) * bridge.inverse_at(x))).canonical().pruned();
}

HarmonicPolynomial ConjugatePotential::at(const Vec4& x) const {
  return bridge_potential(bridge, x, HarmonicOperator::Dmm);
}

Prepotential instanton_prepotential(double rho, const Epsilon& eps) {
  check_rho(rho);
  return Prepotential{rho, eps};
}

Bridge instanton_bridge(double rho, const Epsilon& eps) {
  check_rho(rho);
  return Bridge{rho, eps};
}

ConjugatePotential v_minus_minus(const Bridge& bridge) { return ConjugatePotential{bridge}; }

HarmonicPolynomial flatness_polynomial(const HarmonicPolynomial& vpp, const HarmonicPolynomial& vmm) {
  return apply_D(HarmonicOperator::Dpp, vmm) - apply_D(HarmonicOperator::Dmm, vpp) + commutator(vpp, vmm);
}

double flatness_residual(const HarmonicPolynomial& vpp, const HarmonicPolynomial& vmm, const HarmonicFrame& u) {
  return flatness_polynomial(vpp, vmm).evaluate(u).norm();
}

double bridge_residual(const Bridge& bridge, const Prepotential& vpp, const Vec4& x, const HarmonicFrame& u) {
  const Mat2c uu = bridge(x, u);
  const Mat2c dpp = apply_D(HarmonicOperator::Dpp, bridge.at(x)).evaluate(u);
  return (dpp * uu.inverse() + vpp(x, u)).norm();
}

double frame_relation_residual(const Bridge& bridge, const Vec4& x, const HarmonicFrame& u) {
  const HarmonicPolynomial uu = bridge.at(x);
  const HarmonicPolynomial uinv = bridge.inverse_at(x);
  const HarmonicPolynomial before = uu * apply_D(HarmonicOperator::Dpp, uinv);
  const HarmonicPolynomial after = -(apply_D(HarmonicOperator::Dpp, uu) * uinv);
  return (before - after).evaluate(u).norm();
}

Gradient polynomial_gradient(const PolynomialField& p, const Vec4& x, double h, double rel_tol) {
  if (h <= 0.0) h = 1e-4 * (1.0 + x.norm());
  const MultiField f = [&](const Vec4& y) { return std::vector<HarmonicPolynomial>{p(y)}; };
  return multi_gradient(f, x, h, rel_tol).front();
}

Hessian polynomial_hessian(const PolynomialField& p, const Vec4& x, double h, double rel_tol) {
  if (h <= 0.0) h = 1e-3 * (1.0 + x.norm());
  const Hessian coarse = hessian_at_step(p, x, h);
  const Hessian fine = hessian_at_step(p, x, 0.5 * h);
  Hessian out{empty_gradient(1), empty_gradient(1), empty_gradient(1), empty_gradient(1)};
  double err = 0.0, scale = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      out[mu][nu] = (fine[mu][nu] * cdouble(4.0) - coarse[mu][nu]) * cdouble(1.0 / 3.0);
      err = std::max(err, distance(fine[mu][nu], coarse[mu][nu]));
      scale = std::max(scale, fine[mu][nu].coefficient_norm());
    }
  if (err > rel_tol * scale)
    throw StepTooLarge("polynomial_hessian: Richardson estimates disagree by " + std::to_string(err));
  return out;
}

HarmonicPolynomial harmonic_derivative(const Gradient& gradient, Chirality chirality, int alpha) {
  const auto& minv = inverse_coordinate_map();
  HarmonicPolynomial out(gradient[0].rank());
  for (int bd = 0; bd < 2; ++bd) {
    HarmonicPolynomial d(gradient[0].rank());
    for (int mu = 0; mu < 4; ++mu) d += gradient[mu] * minv(mu, 2 * alpha + bd);
    out += frame_generator(chirality, bd) * d;
  }
  return out;
}

HarmonicPolynomial harmonic_second_derivative(const Hessian& hessian, Chirality chirality, int alpha, int beta) {
  const auto& minv = inverse_coordinate_map();
  HarmonicPolynomial out(hessian[0][0].rank());
  for (int gd = 0; gd < 2; ++gd)
    for (int dd = 0; dd < 2; ++dd) {
      HarmonicPolynomial d(hessian[0][0].rank());
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) d += hessian[mu][nu] * (minv(mu, 2 * alpha + gd) * minv(nu, 2 * beta + dd));
      out += frame_generator(chirality, gd) * frame_generator(chirality, dd) * d;
    }
  return out;
}

double analyticity_residual(const Prepotential& vpp, const Vec4& x, const HarmonicFrame& u, double h) {
  const auto grad = polynomial_gradient([&](const Vec4& y) { return vpp.at(y); }, x, h);
  double r = 0.0;
  for (int al = 0; al < 2; ++al) r = std::max(r, harmonic_derivative(grad, Chirality::plus, al).evaluate(u).norm());
  return r;
}

std::array<std::array<HarmonicPolynomial, 2>, 2> analytic_curvature_polynomials(const ConjugatePotential& vmm,
                                                                                 const Vec4& x, double h) {
  const auto hess = polynomial_hessian([&](const Vec4& y) { return vmm.at(y); }, x, h);
  std::array<std::array<HarmonicPolynomial, 2>, 2> f{{{HarmonicPolynomial(2), HarmonicPolynomial(2)},
                                                      {HarmonicPolynomial(2), HarmonicPolynomial(2)}}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f[a][b] = -harmonic_second_derivative(hess, Chirality::plus, a, b);
  return f;
}

PrepotentialCurvature curvature_from_prepotential(const ConjugatePotential& vmm, const Vec4& x,
                                                  const HarmonicFrame& u, double h) {
  const auto f = analytic_curvature_polynomials(vmm, x, h);
  const Mat2c uu = vmm.bridge(x, u);
  const Mat2c uinv = uu.inverse();
  PrepotentialCurvature out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out.analytic[a][b] = f[a][b].evaluate(u);
      out.central[a][b] = uinv * out.analytic[a][b] * uu;
    }
  return out;
}

GaugeField reconstruct_gauge_field(const Bridge& bridge, const Vec4& x, double h) {
  const auto grad = polynomial_gradient([&](const Vec4& y) { return bridge.at(y); }, x, h);
  const HarmonicPolynomial uinv = bridge.inverse_at(x);
  // u^-_α̇ = ε_{β̇α̇}u^{-β̇}
  std::array<HarmonicPolynomial, 2> u_minus_lower{HarmonicPolynomial(1), HarmonicPolynomial(1)};
  for (int ad = 0; ad < 2; ++ad)
    for (int bd = 0; bd < 2; ++bd)
      u_minus_lower[ad] += frame_generator(Chirality::minus, bd) * bridge.eps.dotted_lower(bd, ad);

  GaugeField a;
  a.point = x;
  a.rho = bridge.rho;
  for (int al = 0; al < 2; ++al) {
    const HarmonicPolynomial connection = uinv * harmonic_derivative(grad, Chirality::plus, al);
    for (int ad = 0; ad < 2; ++ad)
      a.components[al][ad] = 2.0 * integrate(u_minus_lower[ad] * connection);
  }
  return a;
}

double proof_chain_residual(const Prepotential& vpp, const ConjugatePotential& vmm, const Vec4& x,
                            const HarmonicFrame& u, double h) {
  const auto grad_pp = polynomial_gradient([&](const Vec4& y) { return vpp.at(y); }, x, h);
  const auto grad_mm = polynomial_gradient([&](const Vec4& y) { return vmm.at(y); }, x, h);
  const HarmonicPolynomial v = vpp.at(x);
  double r = 0.0;
  for (int b = 0; b < 2; ++b) {
    const HarmonicPolynomial lhs = harmonic_derivative(grad_pp, Chirality::minus, b);
    const HarmonicPolynomial t = harmonic_derivative(grad_mm, Chirality::plus, b);
    const HarmonicPolynomial covariant = apply_D(HarmonicOperator::Dpp, t) + commutator(v, t);
    r = std::max(r, (lhs + covariant).evaluate(u).norm());
  }
  return r;
}

double covariant_constancy_residual(const Prepotential& vpp, const ConjugatePotential& vmm, const Vec4& x,
                                    const HarmonicFrame& u, double h) {
  const auto f = analytic_curvature_polynomials(vmm, x, h);
  const HarmonicPolynomial v = vpp.at(x);
  double r = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      r = std::max(r, (apply_D(HarmonicOperator::Dpp, f[a][b]) + commutator(v, f[a][b])).evaluate(u).norm());
  return r;
}

double bianchi_residual(const ConjugatePotential& vmm, const Vec4& x, const HarmonicFrame& u, double h,
                        double* scale) {
  if (h <= 0.0) h = 1e-2 * (1.0 + x.norm());
  const Mat2c eu = vmm.bridge.eps.undotted_upper;
  const double inner = 0.2 * h;

  // f^{αβ} = ε^{αγ}ε^{βδ}f_{γδ}, flattened as index 2α + β.
  const MultiField raised = [&](const Vec4& y) {
    const auto f = analytic_curvature_polynomials(vmm, y, inner);
    std::vector<HarmonicPolynomial> out(4, HarmonicPolynomial(2));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) out[2 * a + b] += f[c][d] * (eu(a, c) * eu(b, d));
    return out;
  };
  const auto grads = multi_gradient(raised, x, h, 1e-2);
  const auto at_x = raised(x);
  const auto grad_mm = polynomial_gradient([&](const Vec4& y) { return vmm.at(y); }, x);

  double r = 0.0, s = 0.0;
  for (int b = 0; b < 2; ++b) {
    HarmonicPolynomial derivative(2), connection(2);
    for (int a = 0; a < 2; ++a) {
      derivative += harmonic_derivative(grads[2 * a + b], Chirality::minus, a);
      const HarmonicPolynomial a_minus = -harmonic_derivative(grad_mm, Chirality::plus, a);
      connection += commutator(a_minus, at_x[2 * a + b]);
    }
    r = std::max(r, (derivative + connection).evaluate(u).norm());
    s = std::max(s, derivative.evaluate(u).norm());
  }
  if (scale) *scale = s;
  return r;
}

}  // namespace twistor
