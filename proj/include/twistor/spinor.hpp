#pragma once

#include <Eigen/Dense>
#include <complex>

namespace twistor {

using cdouble = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using Spinor = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;

enum class IndexKind { dotted, undotted };
enum class Chirality { plus, minus };

/// The four ε blocks, as matrices indexed [first][second].
/// Standard values: ε_{12} = +1 for both lower blocks and ε^{ab} = -ε_{ab}.
struct Epsilon {
  Mat2c dotted_upper;
  Mat2c dotted_lower;
  Mat2c undotted_upper;
  Mat2c undotted_lower;

  static const Epsilon& standard();
  /// Symmetrized dotted blocks. Only meant for fault-injection tests.
  static Epsilon corrupted();

  /// Max deviation from ε^{ab} = -ε_{ab} = ε^{ba} over both kinds.
  double consistency_residual() const;
};

/// x^{αα̇} as a 2×2 array, row α and column α̇.
struct Bispinor {
  Mat2c entries = Mat2c::Zero();

  /// x_{αα̇} = ε_{αβ}ε_{α̇β̇}x^{ββ̇}
  Mat2c lowered(const Epsilon& eps = Epsilon::standard()) const;
  /// det x^{αα̇}; equals Σ(x^μ)² for the map used by to_bispinor.
  double norm2() const;
  /// max |x^{αα̇} - conj(x_{αα̇})|
  double reality_residual(const Epsilon& eps = Epsilon::standard()) const;
};

/// x^{αα̇} = [[x0 + i x3, x1 + i x2], [-x1 + i x2, x0 - i x3]].
Bispinor to_bispinor(const Vec4& x);

/// Real-linear coordinate map: x^{αα̇} = Σ_μ coordinate_map()(2α+α̇, μ) x^μ.
const Eigen::Matrix4cd& coordinate_map();
/// Inverse map, used for derivatives: ∂_{αα̇} = Σ_μ inverse_coordinate_map()(μ, 2α+α̇) ∂_μ.
const Eigen::Matrix4cd& inverse_coordinate_map();

/// Index gymnastics. The dotted and undotted chiralities contract ε on
/// different slots; each case follows its own convention literally.
Spinor raise_index(const Spinor& s, IndexKind kind, Chirality chirality,
                   const Epsilon& eps = Epsilon::standard());
Spinor lower_index(const Spinor& s, IndexKind kind, Chirality chirality,
                   const Epsilon& eps = Epsilon::standard());

class HarmonicFrame;

/// x^{±α} = x^{αα̇}u^±_{α̇} (upper) or x^±_α = x_{αα̇}u^{±α̇} (lower).
Spinor project(const Bispinor& x, const HarmonicFrame& u, Chirality chirality,
               bool upper = true, const Epsilon& eps = Epsilon::standard());

/// Spinor contraction a_α b^α.
inline cdouble contract(const Spinor& lower, const Spinor& upper) {
  return lower(0) * upper(0) + lower(1) * upper(1);
}

}  // namespace twistor
