#pragma once

// Reduced differential transform recursion for
//
//   u_t + a (u^n)_x + b (u^n)_xxx + k (u^n)_yyx = 0,   u(x, y, 0) = f(x, y).
//
// The solution is carried as its t-Taylor coefficients U_0..U_K; each new
// coefficient comes from (k+1) U_{k+1} = -N_k, where N_k is the k-th
// t-coefficient of the spatial operator applied to u^n. The engine is
// written once against the FieldAlgebra concept and shared by the exact
// (HyperPoly) and grid backends.
//
// The classic advective form a·u·u_x is the n = 2 member with a replaced by
// a/2, since u·u_x = (u²)_x / 2.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zkrdtm/field_algebra.hpp"
#include "zkrdtm/rational.hpp"

namespace zkrdtm {

/// Coefficients of the ZK(n,n) equation. Invariants: n >= 2, b > 0, k > 0.
struct PDESpec {
  Rational a;
  Rational b;
  Rational k_coef;
  int n = 2;

  /// Validating constructor; throws std::invalid_argument.
  static PDESpec make(Rational a, Rational b, Rational k_coef, int n);
  void validate() const;

  friend bool operator==(const PDESpec&, const PDESpec&) = default;
};

template <FieldAlgebra F>
struct InitialCondition {
  F profile;
  /// Amplitude λ the profile was built with, kept for homogeneity checks.
  std::optional<Rational> amplitude;
};

template <FieldAlgebra F>
class SeriesSolution {
 public:
  SeriesSolution(PDESpec spec, std::vector<F> coeffs, std::string backend)
      : spec_(std::move(spec)), coeffs_(std::move(coeffs)), backend_(std::move(backend)) {
    if (coeffs_.empty()) throw std::invalid_argument("SeriesSolution: needs at least U_0");
  }

  [[nodiscard]] int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const F& coeff(int k) const {
    if (k < 0 || k > order()) {
      throw std::out_of_range("SeriesSolution: coefficient index " + std::to_string(k) + " outside 0.." +
                              std::to_string(order()));
    }
    return coeffs_[static_cast<std::size_t>(k)];
  }
  [[nodiscard]] const std::vector<F>& coeffs() const { return coeffs_; }
  [[nodiscard]] const PDESpec& spec() const { return spec_; }
  [[nodiscard]] const std::string& backend() const { return backend_; }

  void push(F next) { coeffs_.push_back(std::move(next)); }
  /// Replaces one coefficient; verification uses this to inject faults.
  void replace(int k, F value) { coeffs_.at(static_cast<std::size_t>(k)) = std::move(value); }

  /// First K+1 coefficients.
  [[nodiscard]] SeriesSolution truncated(int K) const {
    if (K < 0 || K > order()) throw std::out_of_range("SeriesSolution::truncated: bad order");
    return SeriesSolution(spec_, std::vector<F>(coeffs_.begin(), coeffs_.begin() + K + 1), backend_);
  }

 private:
  PDESpec spec_;
  std::vector<F> coeffs_;
  std::string backend_;
};

template <FieldAlgebra F>
SeriesSolution<F> transform_initial(const PDESpec& spec, const InitialCondition<F>& ic) {
  spec.validate();
  return SeriesSolution<F>(spec, {ic.profile}, F::backend_tag);
}

/// t^k coefficient of (Σ_j U_j t^j)^n, by n−1 truncated Cauchy products.
template <FieldAlgebra F>
F series_power_coefficient(const SeriesSolution<F>& S, int n, int k) {
  if (n < 1) throw std::invalid_argument("series_power_coefficient: n must be >= 1");
  if (k < 0 || k > S.order()) {
    throw std::out_of_range("series_power_coefficient: index " + std::to_string(k) + " exceeds order " +
                            std::to_string(S.order()));
  }
  const auto& U = S.coeffs();
  std::vector<F> power(U.begin(), U.begin() + k + 1);
  for (int step = 1; step < n; ++step) {
    std::vector<F> next;
    next.reserve(power.size());
    for (int m = 0; m <= k; ++m) {
      F acc = power[0] * U[static_cast<std::size_t>(m)];
      for (int r = 1; r <= m; ++r) acc = acc + power[static_cast<std::size_t>(r)] * U[static_cast<std::size_t>(m - r)];
      next.push_back(std::move(acc));
    }
    power = std::move(next);
  }
  return power[static_cast<std::size_t>(k)];
}

/// a·∂x P + b·∂x³ P + k·∂y²∂x P for a given power coefficient P.
template <FieldAlgebra F>
F apply_dispersive_operator(const PDESpec& spec, const F& P) {
  F result = P.zero_like();
  bool any = false;
  auto accumulate = [&](const Rational& c, const F& term) {
    result = any ? result + term.scaled(c) : term.scaled(c);
    any = true;
  };
  if (!spec.a.is_zero()) accumulate(spec.a, P.diff(Axis::x, 1));
  if (!spec.b.is_zero()) accumulate(spec.b, P.diff(Axis::x, 3));
  if (!spec.k_coef.is_zero()) accumulate(spec.k_coef, P.diff(Axis::x, 1).diff(Axis::y, 2));
  return result;
}

/// N_k: k-th t-coefficient of a(u^n)_x + b(u^n)_xxx + k(u^n)_yyx.
template <FieldAlgebra F>
F nonlinear_coefficient(const PDESpec& spec, const SeriesSolution<F>& S, int k) {
  return apply_dispersive_operator(spec, series_power_coefficient(S, spec.n, k));
}

/// Appends U_{K+1} = −N_K / (K+1).
template <FieldAlgebra F>
SeriesSolution<F> rdtm_step(const PDESpec& spec, SeriesSolution<F> S) {
  const int K = S.order();
  F next = nonlinear_coefficient(spec, S, K).scaled(Rational(-1, K + 1));
  S.push(std::move(next));
  return S;
}

template <FieldAlgebra F>
SeriesSolution<F> solve(const PDESpec& spec, const InitialCondition<F>& ic, int K) {
  if (K < 0) throw std::invalid_argument("solve: order must be >= 0");
  SeriesSolution<F> S = transform_initial(spec, ic);
  for (int step = 0; step < K; ++step) S = rdtm_step(spec, std::move(S));
  return S;
}

/// Σ U_k(x,y) t^k by Horner in t.
template <FieldAlgebra F>
double evaluate(const SeriesSolution<F>& S, double x, double y, double t) {
  double acc = 0.0;
  for (int k = S.order(); k >= 0; --k) acc = acc * t + static_cast<double>(S.coeff(k).value_at(x, y));
  return acc;
}

}  // namespace zkrdtm
