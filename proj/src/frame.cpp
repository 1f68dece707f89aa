#include "twistor/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace twistor {

HarmonicFrame::HarmonicFrame() : HarmonicFrame(1.0, 0.0) {}

HarmonicFrame::HarmonicFrame(cdouble a, cdouble b) {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n == 0.0) throw std::invalid_argument("HarmonicFrame: zero spinor");
  a /= n;
  b /= n;
  plus_ << a, b;
  minus_ << std::conj(b), -std::conj(a);
}

HarmonicFrame HarmonicFrame::from_angles(double theta, double phi1, double phi2) {
  return HarmonicFrame(std::polar(std::cos(theta), phi1), std::polar(std::sin(theta), phi2));
}

HarmonicFrame HarmonicFrame::random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const double v0 = g(rng), v1 = g(rng), v2 = g(rng), v3 = g(rng);
  return HarmonicFrame(cdouble(v0, v1), cdouble(v2, v3));
}

cdouble HarmonicFrame::generator(int index) const {
  switch (index) {
    case 0: return plus_(0);
    case 1: return plus_(1);
    case 2: return minus_(0);
    case 3: return minus_(1);
    default: throw std::out_of_range("HarmonicFrame::generator");
  }
}

Spinor HarmonicFrame::u_plus_lower(const Epsilon& eps) const {
  return lower_index(plus_, IndexKind::dotted, Chirality::plus, eps);
}

Spinor HarmonicFrame::u_minus_lower(const Epsilon& eps) const {
  return lower_index(minus_, IndexKind::dotted, Chirality::minus, eps);
}

double HarmonicFrame::normalization_residual(const Epsilon& eps) const {
  const Spinor up = u_plus_lower(eps);
  return std::max(std::abs(contract(up, plus_)), std::abs(contract(up, minus_) - 1.0));
}

double HarmonicFrame::reality_residual(const Epsilon& eps) const {
  return std::max((plus_.conjugate() - u_minus_lower(eps)).cwiseAbs().maxCoeff(),
                  (minus_.conjugate() - u_plus_lower(eps)).cwiseAbs().maxCoeff());
}

}  // namespace twistor
