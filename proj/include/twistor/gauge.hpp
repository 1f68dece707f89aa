#pragma once

#include <array>
#include <functional>
#include <vector>

#include "twistor/spinor.hpp"

namespace twistor {

using SpinorBlock = std::array<std::array<Mat2c, 2>, 2>;

/// Connection components A_{αα̇} at a point, as 2×2 gauge matrices.
/// Matrix row/column carry the gauge indices (row = the index the
/// constructor documents; BPST uses row = lower index i).
struct GaugeField {
  SpinorBlock components{};
  Vec4 point = Vec4::Zero();
  double rho = 1.0;

  /// A_μ = Σ_{αα̇} (∂x^{αα̇}/∂x^μ) A_{αα̇}
  std::array<Mat2c, 4> cartesian() const;
  static GaugeField from_cartesian(const std::array<Mat2c, 4>& a, const Vec4& point, double rho);
  /// max over μ of ‖A_μ + A_μ†‖ and |tr A_μ|
  double algebra_residual() const;
  /// g A g⁻¹ componentwise (constant gauge rotation).
  GaugeField conjugated(const Mat2c& g) const;
  /// max Frobenius distance over the four components
  double distance(const GaugeField& other) const;
};

struct CurvatureTensor {
  SpinorBlock f_undotted{};  // f_{αβ}
  SpinorBlock f_dotted{};    // f_{α̇β̇}
  Vec4 point = Vec4::Zero();
  /// Richardson error estimate on F_μν.
  double step_error = 0.0;

  double undotted_norm() const;
  double dotted_norm() const;
  double undotted_symmetry_residual() const;
};

using FieldFunction = std::function<GaugeField(const Vec4&)>;

/// A_{αα̇ i}^j = (½x_{αα̇}δ_i^j + ε_{iα}x^j_{α̇})/(ρ² + x²), x^j_{α̇} = ε_{α̇β̇}x^{jβ̇}.
/// Stored with row = i.
GaugeField bpst_connection(const Vec4& x, double rho, const Epsilon& eps = Epsilon::standard());

/// h ≤ 0 selects the default step 1e-4·(1 + |x|).
double default_fd_step(const Vec4& x);

/// F_μν = ∂_μA_ν - ∂_νA_μ + [A_μ, A_ν] by central differences with one
/// Richardson halving, then split into spinor blocks:
/// f_{αβ} = ½ε^{α̇β̇}F_{αα̇ββ̇}, f_{α̇β̇} = ½ε^{αβ}F_{αα̇ββ̇}.
/// Throws StepTooLarge if the two step sizes disagree by more than rel_tol.
CurvatureTensor curvature(const FieldFunction& field, const Vec4& x, double h = 0.0,
                          const Epsilon& eps = Epsilon::standard(), double rel_tol = 1e-4);

/// Real-coordinate field strength with the same differencing policy.
std::array<std::array<Mat2c, 4>, 4> field_strength(const FieldFunction& field, const Vec4& x, double h,
                                                   double rel_tol, double* error_estimate = nullptr);

/// Top Chern character density per unit d⁴x:
/// -(tr f_{αβ}f^{αβ} - tr f_{α̇β̇}f^{α̇β̇})/(2π²), equal to -(1/8π²)tr F∧F / d⁴x.
double chern_density(const CurvatureTensor& f, const Epsilon& eps = Epsilon::standard());

struct ChargeResult {
  double charge = 0.0;
  double rho = 0.0;
  double r_max = 0.0;
  int intervals = 0;
  double stretch = 0.0;
};

/// ∫₀^{r_max} density(r) 2π²r³ dr along a fixed direction, composite Simpson on
/// the stretched grid r = r_max(1 - tanh(β(1-s))/tanh β).
ChargeResult topological_charge(double rho, double r_max, int n, double stretch = 4.0,
                                const Epsilon& eps = Epsilon::standard());

/// Constant g ∈ SU(2) minimizing Σ‖A g - g B‖² over all points and components,
/// so that g B g⁻¹ ≈ A.
Mat2c best_fit_conjugation(const std::vector<GaugeField>& a, const std::vector<GaugeField>& b);

}  // namespace twistor
