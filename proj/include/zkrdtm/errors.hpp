#pragma once

#include <stdexcept>
#include <string>

namespace zkrdtm {

/// Binary HyperPoly operation on operands with different argument scales.
class ScaleMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two grid fields sampled on different grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Repeated stencil application has consumed the whole grid interior.
class DomainExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the valid (margin-trimmed) region of a field.
class OutOfRegion : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Internal consistency check failed (e.g. a nonzero exact residual).
class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zkrdtm
