#pragma once

#include <utility>
#include <vector>

#include "twistor/harmonic.hpp"
#include "twistor/spinor.hpp"

namespace twistor {

struct SeriesTermTable {
  double rho = 1.0;
  Vec4 x = Vec4::Zero();
  std::vector<std::pair<int, double>> terms;
  std::vector<double> partial_sums;
};

/// Fixes the charge-0 zero mode of a D⁺⁺ preimage: removes its harmonic
/// average and adds back λ·1 so the result stays rank deficient (eigenvalues
/// {tr W, 0}) on the branch tr W ≥ 0. Throws ZeroModeAmbiguous if the
/// traceless part does not square to a constant.
HarmonicPolynomial fix_zero_mode(const HarmonicPolynomial& preimage);

/// W = (1/D⁺⁺)V⁺⁺ at x with the zero mode fixed as above.
HarmonicPolynomial dpp_preimage(const Vec4& x, double rho, int max_degree);

/// (-1)^{k+1}/k ∫d²u tr W^k for a given preimage.
double trace_power_term(const HarmonicPolynomial& w, int k);

/// k-th term of log Det(1 + (1/D⁺⁺)V⁺⁺). max_degree ≤ 0 selects 2k + 2.
/// With the zero-mode rule the term equals (-1)^{k+1} t^k/k, t = |x|²/ρ².
double series_term(int k, const Vec4& x, double rho, int max_degree = 0);

/// Terms and partial sums up to order K, sharing the powers of W.
SeriesTermTable series_table(const Vec4& x, double rho, int order);

/// log(1 + t)/(16π²)
double transgression_closed_form(double t);

struct TransgressionResult {
  double value = 0.0;
  double closed_form = 0.0;
  int order = 0;
  double last_term = 0.0;
  bool analytic_continuation = false;  // |x| ≥ ρ: value is the closed form
  bool convergence_warning = false;    // |last term| > 1e-12 |partial sum|
};

/// T = (1/16π²)Σ_{k≤K} series_term(k) inside the disk |x| < ρ, closed form outside.
TransgressionResult transgression(const Vec4& x, double rho, int order);

struct VariationResult {
  double lhs = 0.0;  // ∂_ρ log(1 + x²/ρ²) by central difference
  double rhs = 0.0;  // ½∫d²u tr(∂_ρV⁺⁺ V⁻⁻)
  double residual = 0.0;
  /// Diagnostics: ∫tr(∂_ρV⁺⁺V⁻⁻) without the ½ differs from lhs by 2x²/ρ³,
  /// whose biharmonic vanishes.
  double full_weight_rhs = 0.0;
  double biharmonic_term = 0.0;
  double full_weight_residual = 0.0;
};

VariationResult variation_check(const Vec4& x, double rho, double delta_rho, int order = 60);

}  // namespace twistor
