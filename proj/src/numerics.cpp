#include "twistor/numerics.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <stdexcept>

namespace twistor::numerics {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  // legendre_p_zeros returns the non-negative roots only.
  const std::vector<double> positive = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(n));
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    if (*it != 0.0) x.push_back(-*it);
  }
  for (double r : positive) x.push_back(r);

  QuadratureRule rule;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime(n, xi);
    const double w = 2.0 / ((1.0 - xi * xi) * dp * dp);
    rule.nodes.push_back(mid + half * xi);
    rule.weights.push_back(half * w);
  }
  return rule;
}

std::vector<double> simpson_weights(int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument("simpson_weights: interval count must be even and >= 2");
  }
  const double h = 1.0 / intervals;
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double base = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = base * h / 3.0;
  }
  return w;
}

}  // namespace twistor::numerics
