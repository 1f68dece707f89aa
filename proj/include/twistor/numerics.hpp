#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace twistor::numerics {

/// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(T value) {
    const T t = sum_ + value;
    if (abs_of(sum_) >= abs_of(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  T value() const { return sum_ + compensation_; }

 private:
  static T abs_of(const T& v) { return v < T(0) ? -v : v; }
  T sum_{0};
  T compensation_{0};
};

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Simpson weights for an even number of intervals on a grid
/// parametrized by s ∈ [0, 1] with uniform spacing.
std::vector<double> simpson_weights(int intervals);

}  // namespace twistor::numerics
