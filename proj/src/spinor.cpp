#include "twistor/spinor.hpp"

#include "twistor/frame.hpp"

namespace twistor {

namespace {

Mat2c lower_epsilon() {
  Mat2c e;
  e << 0.0, 1.0, -1.0, 0.0;
  return e;
}

Eigen::Matrix4cd build_coordinate_map() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    Vec4 e = Vec4::Zero();
    e(mu) = 1.0;
    const Mat2c x = to_bispinor(e).entries;
    for (int a = 0; a < 2; ++a)
      for (int ad = 0; ad < 2; ++ad) m(2 * a + ad, mu) = x(a, ad);
  }
  return m;
}

}  // namespace

const Epsilon& Epsilon::standard() {
  static const Epsilon eps = [] {
    const Mat2c lower = lower_epsilon();
    return Epsilon{-lower, lower, -lower, lower};
  }();
  return eps;
}

Epsilon Epsilon::corrupted() {
  Epsilon eps = standard();
  Mat2c sym;
  sym << 0.0, 1.0, 1.0, 0.0;
  eps.dotted_lower = sym;
  eps.dotted_upper = -sym;
  return eps;
}

double Epsilon::consistency_residual() const {
  auto check = [](const Mat2c& up, const Mat2c& low) {
    return std::max((up + low).cwiseAbs().maxCoeff(), (low + low.transpose()).cwiseAbs().maxCoeff());
  };
  return std::max(check(dotted_upper, dotted_lower), check(undotted_upper, undotted_lower));
}

Mat2c Bispinor::lowered(const Epsilon& eps) const {
  return eps.undotted_lower * entries * eps.dotted_lower.transpose();
}

double Bispinor::norm2() const { return entries.determinant().real(); }

double Bispinor::reality_residual(const Epsilon& eps) const {
  return (entries - lowered(eps).conjugate()).cwiseAbs().maxCoeff();
}

Bispinor to_bispinor(const Vec4& x) {
  const cdouble i(0.0, 1.0);
  Bispinor b;
  b.entries << x(0) + i * x(3), x(1) + i * x(2), -x(1) + i * x(2), x(0) - i * x(3);
  return b;
}

const Eigen::Matrix4cd& coordinate_map() {
  static const Eigen::Matrix4cd m = build_coordinate_map();
  return m;
}

const Eigen::Matrix4cd& inverse_coordinate_map() {
  static const Eigen::Matrix4cd m = coordinate_map().inverse();
  return m;
}

Spinor raise_index(const Spinor& s, IndexKind kind, Chirality chirality, const Epsilon& eps) {
  if (kind == IndexKind::dotted) {
    // u^{+α̇} = ε^{α̇β̇}u^+_β̇,  u^{-α̇} = ε^{β̇α̇}u^-_β̇
    return chirality == Chirality::plus ? Spinor(eps.dotted_upper * s)
                                        : Spinor(eps.dotted_upper.transpose() * s);
  }
  // x^{+α} = x^+_β ε^{βα},  x^{-α} = ε^{αβ}x^-_β
  return chirality == Chirality::plus ? Spinor(eps.undotted_upper.transpose() * s)
                                      : Spinor(eps.undotted_upper * s);
}

Spinor lower_index(const Spinor& s, IndexKind kind, Chirality chirality, const Epsilon& eps) {
  if (kind == IndexKind::dotted) {
    // u^+_α̇ = u^{+β̇}ε_{α̇β̇},  u^-_α̇ = ε_{β̇α̇}u^{-β̇}
    return chirality == Chirality::plus ? Spinor(eps.dotted_lower * s)
                                        : Spinor(eps.dotted_lower.transpose() * s);
  }
  return chirality == Chirality::plus ? Spinor(eps.undotted_lower.transpose() * s)
                                      : Spinor(eps.undotted_lower * s);
}

Spinor project(const Bispinor& x, const HarmonicFrame& u, Chirality chirality, bool upper,
               const Epsilon& eps) {
  const bool plus = chirality == Chirality::plus;
  if (upper) {
    const Spinor low = plus ? u.u_plus_lower(eps) : u.u_minus_lower(eps);
    return x.entries * low;
  }
  return x.lowered(eps) * (plus ? u.u_plus() : u.u_minus());
}

}  // namespace twistor
