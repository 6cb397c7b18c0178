#include "zkrdtm/series.hpp"

namespace zkrdtm {

PDESpec PDESpec::make(Rational a, Rational b, Rational k_coef, int n) {
  PDESpec spec{std::move(a), std::move(b), std::move(k_coef), n};
  spec.validate();
  return spec;
}

void PDESpec::validate() const {
  if (n < 2) throw std::invalid_argument("PDESpec: nonlinearity exponent n must be >= 2, got " + std::to_string(n));
  if (b.sign() <= 0) throw std::invalid_argument("PDESpec: b must be > 0, got " + b.str());
  if (k_coef.sign() <= 0) throw std::invalid_argument("PDESpec: k must be > 0, got " + k_coef.str());
}

}  // namespace zkrdtm
