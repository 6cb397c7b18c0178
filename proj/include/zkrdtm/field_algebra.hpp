#pragma once

#include <concepts>

#include "zkrdtm/rational.hpp"

namespace zkrdtm {

enum class Axis { x, y };

/// What the series recursion needs from a spatial field representation.
///
/// A field value must support the ring operations, scaling by an exact
/// rational, partial differentiation of a given order along one axis, a
/// zero of compatible shape, and pointwise evaluation in binary64.
template <typename F>
concept FieldAlgebra = std::copyable<F> && requires(const F& f, const F& g, const Rational& r, Axis axis,
                                                    int order, double x, double y) {
  { f + g } -> std::same_as<F>;
  { f - g } -> std::same_as<F>;
  { f * g } -> std::same_as<F>;
  { f.scaled(r) } -> std::same_as<F>;
  { f.diff(axis, order) } -> std::same_as<F>;
  { f.zero_like() } -> std::same_as<F>;
  { f.value_at(x, y) } -> std::convertible_to<double>;
};

}  // namespace zkrdtm
