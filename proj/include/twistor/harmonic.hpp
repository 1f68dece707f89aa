#pragma once

#include <Eigen/Dense>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "twistor/frame.hpp"

namespace twistor {

/// Power product of the generators u^{+1}, u^{+2}, u^{-1}, u^{-2}
/// (upper-index components, which commute).
struct HarmonicMonomial {
  std::array<int, 4> powers{};

  static HarmonicMonomial of(int p1, int p2, int q1, int q2) { return {{p1, p2, q1, q2}}; }

  std::array<int, 2> plus_degrees() const { return {powers[0], powers[1]}; }
  std::array<int, 2> minus_degrees() const { return {powers[2], powers[3]}; }
  int plus_degree() const { return powers[0] + powers[1]; }
  int minus_degree() const { return powers[2] + powers[3]; }
  int degree() const { return plus_degree() + minus_degree(); }
  int charge() const { return plus_degree() - minus_degree(); }

  HarmonicMonomial operator*(const HarmonicMonomial& o) const {
    HarmonicMonomial m;
    for (int i = 0; i < 4; ++i) m.powers[i] = powers[i] + o.powers[i];
    return m;
  }
  auto operator<=>(const HarmonicMonomial&) const = default;
};

/// All monomials with the given total degree and charge.
std::vector<HarmonicMonomial> monomials_of(int degree, int charge);

/// Finite sum of monomials with n×n complex coefficients.
/// The normalization u⁺u⁻ = 1 is not quotiented in storage; canonical()
/// rewrites u^{+1}u^{-2} → u^{+2}u^{-1} - 1 and gives the normal form.
class HarmonicPolynomial {
 public:
  using Matrix = Eigen::MatrixXcd;
  using Terms = std::map<HarmonicMonomial, Matrix>;

  explicit HarmonicPolynomial(int rank = 1);

  static HarmonicPolynomial constant(const Matrix& c);
  static HarmonicPolynomial identity(int rank, cdouble value = 1.0);
  static HarmonicPolynomial monomial(const HarmonicMonomial& m, const Matrix& c);
  static HarmonicPolynomial monomial(const HarmonicMonomial& m, cdouble c = 1.0, int rank = 1);
  /// Generator index 0..3 ↔ u^{+1}, u^{+2}, u^{-1}, u^{-2}.
  static HarmonicPolynomial generator(int index, int rank = 1);

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c to the coefficient of m; exact zeros are dropped.
  void add(const HarmonicMonomial& m, const Matrix& c);

  /// Charge if every term has the same one. The zero polynomial has none.
  std::optional<int> charge() const;
  bool is_homogeneous() const;
  int max_degree() const;
  HarmonicPolynomial charge_part(int q) const;

  HarmonicPolynomial& operator+=(const HarmonicPolynomial& o);
  HarmonicPolynomial& operator-=(const HarmonicPolynomial& o);
  HarmonicPolynomial& operator*=(cdouble s);
  friend HarmonicPolynomial operator+(HarmonicPolynomial a, const HarmonicPolynomial& b) { return a += b; }
  friend HarmonicPolynomial operator-(HarmonicPolynomial a, const HarmonicPolynomial& b) { return a -= b; }
  friend HarmonicPolynomial operator*(HarmonicPolynomial a, cdouble s) { return a *= s; }
  friend HarmonicPolynomial operator*(cdouble s, HarmonicPolynomial a) { return a *= s; }
  HarmonicPolynomial operator-() const { return *this * cdouble(-1.0); }
  /// Product with matrix multiplication of coefficients, left to right.
  friend HarmonicPolynomial operator*(const HarmonicPolynomial& a, const HarmonicPolynomial& b);

  HarmonicPolynomial left_multiply(const Matrix& m) const;
  HarmonicPolynomial right_multiply(const Matrix& m) const;
  /// Scalar polynomial of coefficient traces.
  HarmonicPolynomial trace() const;
  /// Embeds a scalar polynomial as (value)·1 of the given rank.
  HarmonicPolynomial as_rank(int rank) const;

  Matrix evaluate(const HarmonicFrame& u) const;
  HarmonicPolynomial canonical() const;
  /// Drops terms whose coefficient norm is below tol·(largest coefficient norm).
  HarmonicPolynomial pruned(double tol = 1e-14) const;
  /// Largest Frobenius norm over coefficients.
  double coefficient_norm() const;

 private:
  int rank_;
  Terms terms_;
};

HarmonicPolynomial commutator(const HarmonicPolynomial& a, const HarmonicPolynomial& b);

enum class HarmonicOperator { Dpp, Dmm, D0 };

/// D⁺⁺ = u^{+α̇}∂/∂u^{-α̇}, D⁻⁻ = u^{-α̇}∂/∂u^{+α̇}, D⁰ = charge.
HarmonicPolynomial apply_D(HarmonicOperator op, const HarmonicPolynomial& f);

/// ∫d²u of a single monomial, as a double. Charge ≠ 0 gives 0.
double monomial_integral(const HarmonicMonomial& m);

/// ∫d²u f. Returns a rank×rank matrix.
Eigen::MatrixXcd integrate(const HarmonicPolynomial& f);

/// |∫d²u D⁺⁺f| computed in exact rational arithmetic over the (binary)
/// coefficients. f must have charge -2.
double integrate_total_derivative_check(const HarmonicPolynomial& f);

struct BracketCheck {
  int max_degree = 0;
  std::size_t monomials = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  bool passed() const { return failures == 0; }
};

/// [D⁺⁺,D⁻⁻] = D⁰ and [D⁰,D^{±±}] = ±2D^{±±} on every monomial up to max_degree.
BracketCheck commutator_check(int max_degree = 8);

/// Minimum-norm x with D⁺⁺x = y on monomials of total degree ≤ max_degree.
/// Throws ChargeMismatch if y is not homogeneous, NotInImage if no preimage.
HarmonicPolynomial invert_Dpp(const HarmonicPolynomial& y, int max_degree);

/// Scalar basis of ker D⁺⁺ among polynomials of the given charge and
/// total degree ≤ max_degree (free algebra, before canonicalization).
std::vector<HarmonicPolynomial> dpp_kernel_basis(int charge, int max_degree);

/// Independent oracle: average over the sphere by Gauss-Legendre in s = cos²θ
/// and trapezoid rules in φ1, φ2 (exact for polynomials of low enough degree).
Eigen::MatrixXcd sphere_average(const HarmonicPolynomial& f, int s_nodes = 0);

}  // namespace twistor
