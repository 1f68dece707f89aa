#include "twistor/gauge.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twistor/errors.hpp"
#include "twistor/numerics.hpp"

namespace twistor {

namespace {

using Cartesian = std::array<Mat2c, 4>;
using Strength = std::array<std::array<Mat2c, 4>, 4>;

double block_norm(const SpinorBlock& b) {
  double n = 0.0;
  for (const auto& row : b)
    for (const auto& m : row) n = std::max(n, m.norm());
  return n;
}

Strength zero_strength() {
  Strength f;
  for (auto& row : f)
    for (auto& m : row) m.setZero();
  return f;
}

// ∂_ν A_μ for all μ, ν by central differences of step h.
std::array<Cartesian, 4> derivatives(const FieldFunction& field, const Vec4& x, double h) {
  std::array<Cartesian, 4> d;
  for (int nu = 0; nu < 4; ++nu) {
    Vec4 e = Vec4::Zero();
    e(nu) = h;
    const Cartesian ap = field(x + e).cartesian();
    const Cartesian am = field(x - e).cartesian();
    for (int mu = 0; mu < 4; ++mu) d[nu][mu] = (ap[mu] - am[mu]) / (2.0 * h);
  }
  return d;
}

}  // namespace

Cartesian GaugeField::cartesian() const {
  const auto& m = coordinate_map();
  Cartesian a;
  for (int mu = 0; mu < 4; ++mu) {
    a[mu].setZero();
    for (int al = 0; al < 2; ++al)
      for (int ad = 0; ad < 2; ++ad) a[mu] += m(2 * al + ad, mu) * components[al][ad];
  }
  return a;
}

GaugeField GaugeField::from_cartesian(const Cartesian& a, const Vec4& point, double rho) {
  const auto& minv = inverse_coordinate_map();
  GaugeField g;
  g.point = point;
  g.rho = rho;
  for (int al = 0; al < 2; ++al) {
    for (int ad = 0; ad < 2; ++ad) {
      g.components[al][ad].setZero();
      for (int mu = 0; mu < 4; ++mu) g.components[al][ad] += minv(mu, 2 * al + ad) * a[mu];
    }
  }
  return g;
}

double GaugeField::algebra_residual() const {
  double r = 0.0;
  for (const auto& a : cartesian()) r = std::max({r, (a + a.adjoint()).norm(), std::abs(a.trace())});
  return r;
}

GaugeField GaugeField::conjugated(const Mat2c& g) const {
  GaugeField out = *this;
  const Mat2c ginv = g.inverse();
  for (auto& row : out.components)
    for (auto& m : row) m = g * m * ginv;
  return out;
}

double GaugeField::distance(const GaugeField& other) const {
  double d = 0.0;
  for (int al = 0; al < 2; ++al)
    for (int ad = 0; ad < 2; ++ad) d = std::max(d, (components[al][ad] - other.components[al][ad]).norm());
  return d;
}

double CurvatureTensor::undotted_norm() const { return block_norm(f_undotted); }
double CurvatureTensor::dotted_norm() const { return block_norm(f_dotted); }

double CurvatureTensor::undotted_symmetry_residual() const {
  return (f_undotted[0][1] - f_undotted[1][0]).norm();
}

GaugeField bpst_connection(const Vec4& x, double rho, const Epsilon& eps) {
  if (!(rho > 0.0)) throw std::invalid_argument("bpst_connection: rho must be positive");
  const Bispinor b = to_bispinor(x);
  const Mat2c upper = b.entries;
  const Mat2c lower = b.lowered(eps);
  // x^j_α̇ = ε_{α̇β̇}x^{jβ̇}, indexed [j][α̇]
  const Mat2c mixed = upper * eps.dotted_lower.transpose();
  const double denom = rho * rho + x.squaredNorm();
  GaugeField g;
  g.point = x;
  g.rho = rho;
  for (int al = 0; al < 2; ++al) {
    for (int ad = 0; ad < 2; ++ad) {
      Mat2c m;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          m(i, j) = (i == j ? 0.5 * lower(al, ad) : cdouble(0.0)) + eps.undotted_lower(i, al) * mixed(j, ad);
      g.components[al][ad] = m / denom;
    }
  }
  return g;
}

double default_fd_step(const Vec4& x) { return 1e-4 * (1.0 + x.norm()); }

Strength field_strength(const FieldFunction& field, const Vec4& x, double h, double rel_tol,
                        double* error_estimate) {
  if (h <= 0.0) h = default_fd_step(x);
  const Cartesian a = field(x).cartesian();
  const auto d1 = derivatives(field, x, h);
  const auto d2 = derivatives(field, x, 0.5 * h);

  Strength f = zero_strength();
  double err = 0.0;
  double scale = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Mat2c coarse = d1[mu][nu] - d1[nu][mu];
      const Mat2c fine = d2[mu][nu] - d2[nu][mu];
      const Mat2c comm = a[mu] * a[nu] - a[nu] * a[mu];
      f[mu][nu] = (4.0 * fine - coarse) / 3.0 + comm;
      err = std::max(err, (fine - coarse).norm());
      scale = std::max({scale, d2[mu][nu].norm(), comm.norm()});
    }
  }
  if (error_estimate) *error_estimate = err;
  if (err > rel_tol * std::max(scale, 1e-300))
    throw StepTooLarge("curvature: Richardson estimates disagree (" + std::to_string(err) + " vs scale " +
                       std::to_string(scale) + ")");
  return f;
}

CurvatureTensor curvature(const FieldFunction& field, const Vec4& x, double h, const Epsilon& eps,
                          double rel_tol) {
  CurvatureTensor out;
  out.point = x;
  const Strength f = field_strength(field, x, h, rel_tol, &out.step_error);
  const auto& minv = inverse_coordinate_map();

  // F_{αα̇ββ̇} = Σ (∂x^μ/∂x^{αα̇})(∂x^ν/∂x^{ββ̇}) F_μν
  Mat2c spin[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int ad = 0; ad < 2; ++ad)
      for (int b = 0; b < 2; ++b)
        for (int bd = 0; bd < 2; ++bd) {
          Mat2c s = Mat2c::Zero();
          for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) s += minv(mu, 2 * a + ad) * minv(nu, 2 * b + bd) * f[mu][nu];
          spin[a][ad][b][bd] = s;
        }

  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Mat2c und = Mat2c::Zero();
      Mat2c dot = Mat2c::Zero();
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          und += 0.5 * eps.dotted_upper(c, d) * spin[a][c][b][d];
          dot += 0.5 * eps.undotted_upper(c, d) * spin[c][a][d][b];
        }
      out.f_undotted[a][b] = und;
      out.f_dotted[a][b] = dot;
    }
  }
  return out;
}

double chern_density(const CurvatureTensor& f, const Epsilon& eps) {
  auto square = [](const SpinorBlock& low, const Mat2c& up_eps) {
    cdouble s = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Mat2c raised = Mat2c::Zero();
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) raised += up_eps(a, c) * up_eps(b, d) * low[c][d];
        s += (low[a][b] * raised).trace();
      }
    return s.real();
  };
  const double und = square(f.f_undotted, eps.undotted_upper);
  const double dot = square(f.f_dotted, eps.dotted_upper);
  return -(und - dot) / (2.0 * std::numbers::pi * std::numbers::pi);
}

ChargeResult topological_charge(double rho, double r_max, int n, double stretch, const Epsilon& eps) {
  if (!(rho > 0.0) || !(r_max > 0.0)) throw std::invalid_argument("topological_charge: rho and r_max must be positive");
  if (n < 2) throw std::invalid_argument("topological_charge: need at least 2 intervals");
  if (n % 2 != 0) ++n;
  const auto w = numerics::simpson_weights(n);
  const double tb = std::tanh(stretch);
  const Vec4 direction = Vec4::Constant(0.5);
  const FieldFunction field = [&](const Vec4& y) { return bpst_connection(y, rho, eps); };

  numerics::CompensatedSum<double> sum;
  for (int i = 0; i <= n; ++i) {
    const double s = static_cast<double>(i) / n;
    const double arg = stretch * (1.0 - s);
    const double r = r_max * (1.0 - std::tanh(arg) / tb);
    const double sech = 1.0 / std::cosh(arg);
    const double drds = r_max * stretch * sech * sech / tb;
    if (r == 0.0) continue;  // r³ weight vanishes
    const double density = chern_density(curvature(field, r * direction, 0.0, eps), eps);
    sum += w[static_cast<std::size_t>(i)] * density * 2.0 * std::numbers::pi * std::numbers::pi * r * r * r * drds;
  }
  return {sum.value(), rho, r_max, n, stretch};
}

Mat2c best_fit_conjugation(const std::vector<GaugeField>& a, const std::vector<GaugeField>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("best_fit_conjugation: need matching samples");
  const cdouble i(0.0, 1.0);
  std::array<Mat2c, 4> basis;
  basis[0] = Mat2c::Identity();
  basis[1] << 0.0, i, i, 0.0;            // iσ1
  basis[2] << 0.0, 1.0, -1.0, 0.0;       // iσ2
  basis[3] << i, 0.0, 0.0, -i;           // iσ3

  // q ↦ A g(q) - g(q) B is real-linear; accumulate JᵀJ.
  Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (int al = 0; al < 2; ++al)
      for (int ad = 0; ad < 2; ++ad) {
        const Mat2c& am = a[p].components[al][ad];
        const Mat2c& bm = b[p].components[al][ad];
        Eigen::Matrix<double, 8, 4> j;
        for (int k = 0; k < 4; ++k) {
          const Mat2c r = am * basis[k] - basis[k] * bm;
          for (int e = 0; e < 4; ++e) {
            j(2 * e, k) = r(e / 2, e % 2).real();
            j(2 * e + 1, k) = r(e / 2, e % 2).imag();
          }
        }
        jtj += j.transpose() * j;
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(jtj);
  Eigen::Vector4d q = es.eigenvectors().col(0);
  q.normalize();
  Mat2c g = Mat2c::Zero();
  for (int k = 0; k < 4; ++k) g += q(k) * basis[k];
  return g;
}

}  // namespace twistor
