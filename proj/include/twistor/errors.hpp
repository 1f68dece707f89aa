#pragma once

#include <stdexcept>
#include <string>

namespace twistor {

/// The right-hand side of a D⁺⁺ inversion has no preimage on the truncated
/// monomial space. Usually means max_degree is too small.
class NotInImage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A polynomial does not carry the (homogeneous) charge an operation needs.
class ChargeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference derivative disagrees with its Richardson refinement.
class StepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radial stencil gives different answers on the grid and its coarsening.
class GridTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The charge-0 zero mode of a D⁺⁺ preimage cannot be fixed by the
/// rank condition (the traceless part does not square to a constant).
class ZeroModeAmbiguous : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twistor
