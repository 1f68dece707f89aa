#pragma once

#include <random>

#include "twistor/spinor.hpp"

namespace twistor {

/// A point of the harmonic sphere: u^{+α̇} = (a, b) with |a|² + |b|² = 1 and
/// u^{-α̇} = (conj b, -conj a). Stored with upper indices.
class HarmonicFrame {
 public:
  HarmonicFrame();
  HarmonicFrame(cdouble a, cdouble b);

  /// Chart used by the quadrature oracle: a = cos θ e^{iφ1}, b = sin θ e^{iφ2}.
  static HarmonicFrame from_angles(double theta, double phi1, double phi2);
  /// Haar-uniform sample.
  static HarmonicFrame random(std::mt19937_64& rng);

  const Spinor& u_plus() const { return plus_; }
  const Spinor& u_minus() const { return minus_; }
  /// The four algebra generators u^{+1}, u^{+2}, u^{-1}, u^{-2}.
  cdouble generator(int index) const;

  Spinor u_plus_lower(const Epsilon& eps = Epsilon::standard()) const;
  Spinor u_minus_lower(const Epsilon& eps = Epsilon::standard()) const;

  /// max(|u⁺_α̇u^{+α̇}|, |u⁺_α̇u^{-α̇} - 1|)
  double normalization_residual(const Epsilon& eps = Epsilon::standard()) const;
  /// max |conj(u^{±α̇}) - u^∓_α̇|
  double reality_residual(const Epsilon& eps = Epsilon::standard()) const;

 private:
  Spinor plus_;
  Spinor minus_;
};

}  // namespace twistor
