#pragma once

#include <functional>

#include "twistor/gauge.hpp"
#include "twistor/harmonic.hpp"

namespace twistor {

/// Harmonic polynomial depending on a spacetime point.
using PolynomialField = std::function<HarmonicPolynomial(const Vec4&)>;

/// x^{±α} (upper = true) or x^±_α as scalar polynomials linear in u.
std::array<HarmonicPolynomial, 2> harmonic_projection(const Vec4& x, Chirality chirality, bool upper,
                                                      const Epsilon& eps = Epsilon::standard());

/// Rank-2 polynomial with entry (j, i) = column[j]·row[i].
HarmonicPolynomial outer_product(const std::array<HarmonicPolynomial, 2>& column,
                                 const std::array<HarmonicPolynomial, 2>& row);

/// Analytic prepotential V⁺⁺, row = upper gauge index j.
struct Prepotential {
  double rho = 1.0;
  Epsilon eps = Epsilon::standard();

  /// -x^{+j}x^+_i/ρ². The sign follows from V⁺⁺ = -D⁺⁺(U)U⁻¹ with the bridge below.
  HarmonicPolynomial at(const Vec4& x) const;
  Mat2c operator()(const Vec4& x, const HarmonicFrame& u) const { return at(x).evaluate(u); }
};

/// U = (1 + x²/ρ²)^{-1/2}(δ + x^{+j}x^-_i/ρ²), row = j.
struct Bridge {
  double rho = 1.0;
  Epsilon eps = Epsilon::standard();

  HarmonicPolynomial at(const Vec4& x) const;
  /// (1 + t)^{1/2}(δ - N/(1 + t)) with N = x^{+j}x^-_i/ρ²; exact modulo u⁺u⁻ = 1.
  HarmonicPolynomial inverse_at(const Vec4& x) const;
  Mat2c operator()(const Vec4& x, const HarmonicFrame& u) const { return at(x).evaluate(u); }
};

/// V⁻⁻ = -D⁻⁻(U)U⁻¹ from a bridge, canonicalized.
struct ConjugatePotential {
  Bridge bridge;

  HarmonicPolynomial at(const Vec4& x) const;
  Mat2c operator()(const Vec4& x, const HarmonicFrame& u) const { return at(x).evaluate(u); }
};

Prepotential instanton_prepotential(double rho, const Epsilon& eps = Epsilon::standard());
Bridge instanton_bridge(double rho, const Epsilon& eps = Epsilon::standard());
ConjugatePotential v_minus_minus(const Bridge& bridge);

/// -D^{±±}(U)U⁻¹ at x (op = Dpp or Dmm), canonicalized.
HarmonicPolynomial bridge_potential(const Bridge& bridge, const Vec4& x, HarmonicOperator op);

/// D⁺⁺V⁻⁻ - D⁻⁻V⁺⁺ + [V⁺⁺, V⁻⁻]
HarmonicPolynomial flatness_polynomial(const HarmonicPolynomial& vpp, const HarmonicPolynomial& vmm);
double flatness_residual(const HarmonicPolynomial& vpp, const HarmonicPolynomial& vmm, const HarmonicFrame& u);

/// ‖D⁺⁺(U)U⁻¹ + V⁺⁺‖ at (x, u)
double bridge_residual(const Bridge& bridge, const Prepotential& vpp, const Vec4& x, const HarmonicFrame& u);

/// ‖U D⁺⁺(U⁻¹) - (-D⁺⁺(U)U⁻¹)‖ at (x, u): the two frames' V⁺⁺ agree.
double frame_relation_residual(const Bridge& bridge, const Vec4& x, const HarmonicFrame& u);

/// ∂_μ P for μ = 0..3 by central differences with one Richardson halving.
std::array<HarmonicPolynomial, 4> polynomial_gradient(const PolynomialField& p, const Vec4& x, double h = 0.0,
                                                      double rel_tol = 1e-4);
/// ∂_μ∂_ν P with the same policy.
std::array<std::array<HarmonicPolynomial, 4>, 4> polynomial_hessian(const PolynomialField& p, const Vec4& x,
                                                                    double h = 0.0, double rel_tol = 1e-3);

/// ∂^±_α = u^{±β̇}∂_{αβ̇} applied to a gradient; the result is a polynomial in u.
HarmonicPolynomial harmonic_derivative(const std::array<HarmonicPolynomial, 4>& gradient, Chirality chirality,
                                       int alpha);
/// ∂^±_α∂^±_β applied to a Hessian.
HarmonicPolynomial harmonic_second_derivative(const std::array<std::array<HarmonicPolynomial, 4>, 4>& hessian,
                                              Chirality chirality, int alpha, int beta);

/// max_α ‖∂V⁺⁺/∂x^{-α}‖ = max_α ‖∂⁺_αV⁺⁺‖ at (x, u).
double analyticity_residual(const Prepotential& vpp, const Vec4& x, const HarmonicFrame& u, double h = 0.0);

/// Analytic-frame f_{αβ} = -∂⁺_α∂⁺_βV⁻⁻ as polynomials.
std::array<std::array<HarmonicPolynomial, 2>, 2> analytic_curvature_polynomials(const ConjugatePotential& vmm,
                                                                                 const Vec4& x, double h = 0.0);

struct PrepotentialCurvature {
  SpinorBlock analytic{};  // -∂⁺∂⁺V⁻⁻ at u, depends on u
  SpinorBlock central{};   // U⁻¹(-∂⁺∂⁺V⁻⁻)U, u-independent
};

PrepotentialCurvature curvature_from_prepotential(const ConjugatePotential& vmm, const Vec4& x,
                                                  const HarmonicFrame& u, double h = 0.0);

/// A_{αα̇} = 2∫d²u u^-_{α̇}(U⁻¹∂⁺_αU), row = j. The factor 2 compensates
/// ∫u^{+β̇}u^-_{α̇} = ½δ^β̇_α̇.
GaugeField reconstruct_gauge_field(const Bridge& bridge, const Vec4& x, double h = 0.0);

/// ‖∂⁻_βV⁺⁺ + 𝒟⁺⁺∂⁺_βV⁻⁻‖ with 𝒟⁺⁺ = D⁺⁺ + [V⁺⁺, ·], max over β.
double proof_chain_residual(const Prepotential& vpp, const ConjugatePotential& vmm, const Vec4& x,
                            const HarmonicFrame& u, double h = 0.0);

/// ‖𝒟⁺⁺f_{αβ}‖ for the analytic-frame curvature, max over α, β.
double covariant_constancy_residual(const Prepotential& vpp, const ConjugatePotential& vmm, const Vec4& x,
                                    const HarmonicFrame& u, double h = 0.0);

/// ‖∂⁻_αf^{αβ} + [A⁻_α, f^{αβ}]‖ with A⁻_α = -∂⁺_αV⁻⁻, max over β.
/// Also returns the scale ‖∂⁻f‖ through *scale when given.
double bianchi_residual(const ConjugatePotential& vmm, const Vec4& x, const HarmonicFrame& u, double h = 0.0,
                        double* scale = nullptr);

}  // namespace twistor
