#pragma once

#include <vector>

#include "zkrdtm/rational.hpp"

namespace zkrdtm {

/// Radius of the centered stencil for a derivative order and an even
/// accuracy order: floor((d − 1) / 2) + p / 2.
int stencil_radius(int derivative_order, int accuracy_order);

/// Centered finite-difference weights on offsets −r..r, solved exactly
/// from the moment conditions Σ w_j j^m = d!·δ_{m,d}, m = 0..2r.
/// Supports derivative_order ∈ {1,2,3} and accuracy_order ∈ {2,4,6,8};
/// anything else throws std::invalid_argument.
std::vector<Rational> stencil_coefficients(int derivative_order, int accuracy_order);

}  // namespace zkrdtm
