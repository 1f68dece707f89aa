#pragma once

// Reference values that do not go through the library.

#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// Haar moment of a^{p1} b^{p2} conj(b)^{q1} (-conj a)^{q2}, i.e. the monomial
/// u^{+1}^{p1} u^{+2}^{p2} u^{-1}^{q1} u^{-2}^{q2} with u⁺ = (a, b), u⁻ = (b̄, -ā).
/// Uses ∫|a|^{2m}|b|^{2n} = m! n!/(m + n + 1)! on S³.
inline double haar_monomial(int p1, int p2, int q1, int q2) {
  if (p1 != q2 || p2 != q1) return 0.0;
  const double sign = q2 % 2 ? -1.0 : 1.0;
  return sign * factorial(p1) * factorial(p2) / factorial(p1 + p2 + 1);
}

/// Average of g(a, b) over S³ in the chart a = √(1-s) e^{iφ1}, b = √s e^{iφ2},
/// where Haar measure is ds dφ1 dφ2/(4π²). Gauss in s, trapezoid in the angles;
/// exact for polynomials of degree < min(60, nphi).
inline std::complex<double> haar_average(const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& g,
                                         int nphi = 24) {
  const double tau = 2.0 * std::numbers::pi;
  auto ring = [&](double s) {
    std::complex<double> sum = 0.0;
    for (int j = 0; j < nphi; ++j)
      for (int k = 0; k < nphi; ++k)
        sum += g(std::polar(std::sqrt(1.0 - s), tau * j / nphi), std::polar(std::sqrt(s), tau * k / nphi));
    return sum / double(nphi * nphi);
  };
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const double re = Rule::integrate([&](double s) { return ring(s).real(); }, 0.0, 1.0);
  const double im = Rule::integrate([&](double s) { return ring(s).imag(); }, 0.0, 1.0);
  return {re, im};
}

/// Δ²f for radial f in ℝ⁴: f'''' + 6f'''/r + 3f''/r² - 3f'/r³, jets by autodiff.
template <typename F>
double radial_biharmonic(F&& f, double r) {
  using boost::math::differentiation::make_fvar;
  const auto x = make_fvar<double, 4>(r);
  const auto y = f(x);
  const double d1 = y.derivative(1), d2 = y.derivative(2), d3 = y.derivative(3), d4 = y.derivative(4);
  return d4 + 6.0 * d3 / r + 3.0 * d2 / (r * r) - 3.0 * d1 / (r * r * r);
}

/// (1/16π²) log(1 + r²/ρ²) as a generic functor for autodiff.
struct Transgression {
  double rho = 1.0;
  template <typename T>
  T operator()(const T& r) const {
    using std::log;
    return log(1.0 + r * r / (rho * rho)) / (16.0 * std::numbers::pi * std::numbers::pi);
  }
};

/// Chern character density of the unit-charge instanton: 6ρ⁴/(π²(r² + ρ²)⁴).
inline double instanton_density(double r, double rho) {
  const double s = r * r + rho * rho;
  return 6.0 * std::pow(rho, 4) / (std::numbers::pi * std::numbers::pi * s * s * s * s);
}

/// k-th coefficient of log(1 + t).
inline double log_series_term(int k, double t) { return (k % 2 ? 1.0 : -1.0) * std::pow(t, k) / k; }

}  // namespace oracle
